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

namespace sfg::objective {

inline constexpr double kPredClamp = 1e-7;
inline constexpr int kWeightWindow = 15;
inline constexpr double kDefaultLambda = 0.1;

/// w = 1 + 5 |box15(gt) - gt| with an edge-replicated 15x15 box filter, so
/// pixels near mask boundaries weigh up to 6x.
Tensor boundary_weights(const Tensor& gt);

/// sum(w * bce(p, g)) / sum(w); p is clamped to [1e-7, 1 - 1e-7] and clamped
/// pixels pass no gradient.
Var weighted_bce(Var pred, const Tensor& gt);

/// 1 - (sum w p g + 1) / (sum w (p + g - p g) + 1).
Var weighted_iou(Var pred, const Tensor& gt);

/// 1 - cos(a, b). Throws AlignmentError if either vector is zero.
Var cosine_loss(Var a, Var b);

/// The visual side of the alignment term: GAP of F_MFA projected to the
/// text dimension by `align.visual`.
Var visual_embedding(Context& ctx, Var f_mfa, int text_dim);

struct LossReport {
  double l_wbce = 0.0;
  double l_wiou = 0.0;
  double l_cos = 0.0;
  double lambda = kDefaultLambda;
  double total = 0.0;
};

struct CompositeLoss {
  Var total;
  LossReport report;
};

/// (wbce + wiou) + lambda * cos.
CompositeLoss composite_loss(Var pred, const Tensor& gt, Var text, Var visual,
                             double lambda = kDefaultLambda);

}  // namespace sfg::objective
