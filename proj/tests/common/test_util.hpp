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

#include <cstdint>
#include <string>

#include "sfg/core/layers.hpp"
#include "sfg/core/random.hpp"
#include "sfg/core/tensor.hpp"

namespace sfg::testing {

inline Tensor random_tensor(Shape s, std::uint64_t seed, double lo = -1.0,
                            double hi = 1.0) {
  Rng rng(seed, "test-tensor");
  Tensor t(s);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
  return t;
}

/// sum(r * x) for a fixed random r: turns any map output into a scalar whose
/// gradient touches every element.
inline Var random_projection(Var x, std::uint64_t seed) {
  Var r = x.tape().constant(random_tensor(x.shape(), seed ^ 0x5eedULL));
  return ops::sum(ops::mul(x, r));
}

inline Tensor identity_matrix(int n) {
  Tensor w(Shape{1, n, n});
  for (int i = 0; i < n; ++i) w.at(0, i, i) = 1.0;
  return w;
}

}  // namespace sfg::testing
