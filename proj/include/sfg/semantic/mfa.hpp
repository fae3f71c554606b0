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

#include "sfg/core/layers.hpp"

namespace sfg::semantic {

inline constexpr int kMfaWidth = 32;

/// Projects each scale to 32 channels (`mfa.proj3/4/5`), resizes bilinearly
/// to f3's resolution, concatenates and fuses with `mfa.fuse` (96 -> 32).
Var mfa_forward(Context& ctx, Var f3, Var f4, Var f5);

/// Ablation baseline: the same aligned maps averaged instead of fused by a
/// learned projection.
Var mean_fuse(Context& ctx, Var f3, Var f4, Var f5);

}  // namespace sfg::semantic
