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

#include "sfg/semantic/vision_encoder.hpp"

namespace sfg::semantic {

struct GateResult {
  PyramidVars gated;  // v̂_i = (W_i v_i) * t̂_i
  Var g3, g4, g5;     // per-channel gates, (C_i,1,1)
};

/// Text-conditioned channel gating. `t` is a (64,1,1) embedding; one dense
/// map `bin.gate` produces all 32+64+96 gate logits.
GateResult bin_gate(Context& ctx, const PyramidVars& v, Var t);

struct FlowResult {
  Var p3, p4, p5;  // top-down
  Var n3, n4, n5;  // bottom-up
};

/// Top-down then bottom-up refinement. p5 = v̂5, n3 = p3; each step adds the
/// channel-aligned, resampled neighbour and applies 3x3 conv + relu.
/// The refined readout is {p3, n4, n5}.
FlowResult bin_flow(Context& ctx, const PyramidVars& gated);

}  // namespace sfg::semantic
