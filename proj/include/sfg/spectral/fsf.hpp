// Copyright 2026 The sfgnet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "sfg/core/layers.hpp"

namespace sfg::spectral {

struct FsfResult {
  Var fused;           // F_fs
  Var channel_branch;  // F_c
  Var spatial_branch;  // F_s
  Var channel_gate;    // (C,1,1)
  Var spatial_gate;    // (1,H,W)
};

/// Frequency-spatial fusion. Channel gate: SE bottleneck (ratio 4) on the
/// pooled spatial features. Spatial gate: 7x7 replicate-padded conv over
/// [channel mean, channel max] of the frequency features. The two gated
/// maps are concatenated and projected back to C channels.
FsfResult fsf_forward(Context& ctx, Var f_spa, Var f_freq,
                      const std::string& prefix = "fsf");

}  // namespace sfg::spectral
