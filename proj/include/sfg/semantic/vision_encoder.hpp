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

#include "sfg/core/layers.hpp"

namespace sfg::semantic {

inline constexpr int kC3 = 32;
inline constexpr int kC4 = 64;
inline constexpr int kC5 = 96;

struct FeaturePyramid {
  Tensor v3;  // (32, H/8, W/8)
  Tensor v4;  // (64, H/16, W/16)
  Tensor v5;  // (96, H/32, W/32)
};

/// Pyramid on a tape; the same three scales at any processing stage.
struct PyramidVars {
  Var v3, v4, v5;
};

PyramidVars as_constants(Tape& tape, const FeaturePyramid& p);

/// Frozen stand-in for a pretrained backbone: a 4x4 space-to-depth stem
/// followed by three stride-2 3x3 conv + relu stages. Weights depend only on
/// the seed and never receive gradients. The first stage's filters sum to
/// zero over every colour channel, so flat colour regions produce no
/// response and only texture is encoded.
class StubVisionEncoder {
 public:
  explicit StubVisionEncoder(std::uint64_t seed = 0x5eed);

  /// image is (3,H,W) with H and W divisible by 32.
  FeaturePyramid encode(const Tensor& image) const;
  const ParamStore& params() const { return params_; }

 private:
  ParamStore params_;
};

}  // namespace sfg::semantic
