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

#include "sfg/core/tensor.hpp"

namespace sfg::metrics {

// Every metric takes a (1,H,W) prediction in [0,1] and a same-shape mask;
// mask pixels >= 0.5 are foreground. Shape mismatch throws ShapeError.

double mae(const Tensor& pred, const Tensor& gt);

/// Structure measure: 0.5 * object term + 0.5 * region term, clamped at 0.
/// Empty mask: 1 - mean(pred); full mask: mean(pred).
double s_measure(const Tensor& pred, const Tensor& gt);

/// Enhanced-alignment measure averaged over the 256 thresholds k/256
/// (binarizing with pred > k/256). Per-threshold scores are normalized by the
/// pixel count, so a perfect binary prediction scores exactly 1.
double e_measure(const Tensor& pred, const Tensor& gt);

/// Weighted F-measure with beta^2 = 1, a 7x7 sigma-5 Gaussian for error
/// dependency and distance-based background weighting. Empty mask: 1 if the
/// prediction is all zero, else 0.
double weighted_f_measure(const Tensor& pred, const Tensor& gt);

struct MetricsReport {
  double s_measure = 0.0;
  double f_beta_w = 0.0;
  double mae = 0.0;
  double e_measure = 0.0;
  int n_images = 0;
};

MetricsReport evaluate_image(const Tensor& pred, const Tensor& gt);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Distance to, and flat index of, the nearest foreground pixel for every
/// pixel (0 and itself on foreground). Ties go to the smallest row, then
/// the smallest column. Requires at least one foreground pixel.
struct NearestForeground {
  std::vector<double> distance;
  std::vector<int> index;
};
NearestForeground nearest_foreground(const Tensor& gt);

}  // namespace sfg::metrics
