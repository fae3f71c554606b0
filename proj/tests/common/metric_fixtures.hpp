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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "sfg/core/random.hpp"
#include "sfg/core/tensor.hpp"

namespace sfg::metrics::fixtures {

// The 16x16 fixtures of tests/oracles/cod_metrics_oracle.py, rebuilt from
// the same closed-form expressions.
inline std::pair<Tensor, Tensor> fixture(const std::string& kind) {
  Tensor pred(Shape{1, 16, 16}), gt(Shape{1, 16, 16});
  for (int yi = 0; yi < 16; ++yi)
    for (int xi = 0; xi < 16; ++xi) {
      const double y = yi, x = xi;
      double p = 0.0;
      bool g = false;
      if (kind == "ellipse") {
        g = std::pow((y - 7.0) / 5.0, 2) + std::pow((x - 9.0) / 4.0, 2) <= 1.0;
        p = 0.5 + 0.45 * std::sin(0.7 * x + 0.3) * std::cos(0.5 * y - 0.2);
        p = g ? std::clamp(p + 0.3, 0.0, 1.0) : std::clamp(p - 0.3, 0.0, 1.0);
      } else if (kind == "offset_square") {
        g = y >= 3 && y < 11 && x >= 2 && x < 9;
        p = (yi >= 5 && yi < 13 && xi >= 4 && xi < 11) ? 0.8 : 0.0;
        p += 0.1 * ((xi + 2 * yi) % 3) / 2.0;
      } else {
        const double r = std::sqrt((y - 8.0) * (y - 8.0) + (x - 7.5) * (x - 7.5));
        g = r >= 3.0 && r < 6.0;
        p = std::exp(-(r - 4.5) * (r - 4.5) / 4.0);
      }
      pred.at(0, yi, xi) = p;
      gt.at(0, yi, xi) = g ? 1.0 : 0.0;
    }
  return {pred, gt};
}

struct Golden {
  const char* kind;
  double s, e, f, mae;
};

// Produced by tests/oracles/cod_metrics_oracle.py.
constexpr Golden kGolden[] = {
    {"ellipse", 0.752639083963, 0.636160781427, 0.594328589635, 0.234491073403},
    {"offset_square", 0.583668431886, 0.695160025091, 0.524369406116, 0.233789062500},
    {"ring", 0.870474072491, 0.755912008075, 0.766332558493, 0.166127761491},
};

// Salt-and-pepper with nested corruption sets: level L touches every pixel
// with u < L, so higher levels strictly extend lower ones.
inline Tensor salt_and_pepper(const Tensor& clean, double level, std::uint64_t seed) {
  Rng pick(seed, "pick"), val(seed, "value");
  Tensor out = clean;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (pick.uniform_at(i) < level) out[i] = val.uniform_at(i) < 0.5 ? 0.0 : 1.0;
  return out;
}

}  // namespace sfg::metrics::fixtures
