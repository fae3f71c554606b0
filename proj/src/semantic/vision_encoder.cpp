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

#include "sfg/semantic/vision_encoder.hpp"

#include <string>

#include "sfg/core/errors.hpp"

namespace sfg::semantic {

namespace {

constexpr int kStemBlock = 4;
constexpr int kStemChannels = 3 * kStemBlock * kStemBlock;
const ops::ConvSpec kStage{3, 2, ops::Padding::kReplicate};

void make_stage(ParamStore& store, const std::string& name, int in, int out) {
  store.get_or_create(name + ".weight", Shape{out, in, 9}, Init::uniform(in * 9));
  store.get_or_create(name + ".bias", Shape{out, 1, 1}, Init::zeros());
}

}  // namespace

PyramidVars as_constants(Tape& tape, const FeaturePyramid& p) {
  return {tape.constant(p.v3), tape.constant(p.v4), tape.constant(p.v5)};
}

StubVisionEncoder::StubVisionEncoder(std::uint64_t seed) : params_(seed) {
  make_stage(params_, "stage3", kStemChannels, kC3);
  make_stage(params_, "stage4", kC3, kC4);
  make_stage(params_, "stage5", kC4, kC5);

  // Centre each first-stage filter within every colour channel.
  Tensor w = params_.at("stage3.weight").value;
  const int per_colour = kStemBlock * kStemBlock * 9;
  for (int o = 0; o < kC3; ++o)
    for (int colour = 0; colour < 3; ++colour) {
      double* f = w.data().data() + (static_cast<std::size_t>(o) * kStemChannels +
                                     colour * kStemBlock * kStemBlock) * 9;
      double m = 0.0;
      for (int i = 0; i < per_colour; ++i) m += f[i];
      m /= per_colour;
      for (int i = 0; i < per_colour; ++i) f[i] -= m;
    }
  params_.set("stage3.weight", std::move(w));
}

FeaturePyramid StubVisionEncoder::encode(const Tensor& image) const {
  const Shape s = image.shape();
  if (s.c != 3 || s.h % 32 != 0 || s.w % 32 != 0 || s.h == 0 || s.w == 0) {
    throw ShapeError("vision encoder needs a (3,H,W) image with H, W divisible by 32, got " +
                     to_string(s));
  }
  Tape tape;
  auto frozen = [&](const std::string& name) { return tape.constant(params_.at(name).value); };
  auto stage = [&](Var x, const std::string& name) {
    return ops::relu(ops::conv2d(x, frozen(name + ".weight"), frozen(name + ".bias"), kStage));
  };
  const Var stem = ops::space_to_depth(tape.constant(image), kStemBlock);
  const Var v3 = stage(stem, "stage3");
  const Var v4 = stage(v3, "stage4");
  const Var v5 = stage(v4, "stage5");
  return {v3.value(), v4.value(), v5.value()};
}

}  // namespace sfg::semantic
