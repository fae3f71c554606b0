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
#include <vector>

#include "sfg/core/layers.hpp"

namespace sfg::structure {

struct IsebResult {
  Var out;        // main + attended
  Var attended;   // Softmax(QK^T / sqrt(d)) V as (C,H,W)
  Var attention;  // (1, HW_main, HW_aux) row-stochastic
};

/// Single-head attention of `main` tokens onto `aux` tokens with residual
/// fusion. aux is bilinearly resized to main's grid first; Q, K, V are
/// bias-free 1x1 projections to main's channel count and d = C.
IsebResult iseb_forward(Context& ctx, Var main, Var aux, const std::string& prefix = "iseb");

inline constexpr int kDecoderWidth = 32;
inline constexpr int kDecoderStages = 3;

struct DecoderResult {
  Var prediction;           // (1, out_h, out_w) in (0,1)
  Var logits;               // (1, h, w) before sigmoid and resize
  std::vector<Var> stages;  // running state after each stage
};

/// Progressive decoder. The state starts from the coarsest refined feature
/// (`dec.entry` projection of `coarse`), then each stage doubles the grid,
/// attends onto f_fs resized to that grid (skipped when `use_iseb` is
/// false) and applies 3x3 conv + relu. A 1x1 head, sigmoid and bilinear
/// resize to (out_h, out_w) give the prediction.
DecoderResult decoder_forward(Context& ctx, Var f_fs, Var coarse, int out_h, int out_w,
                              bool use_iseb = true);

}  // namespace sfg::structure
