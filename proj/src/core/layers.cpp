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

#include "sfg/core/layers.hpp"

namespace sfg {

Var Context::param(const std::string& name, Shape shape, const Init& init) {
  return tape_.parameter(params_.get_or_create(name, shape, init));
}

Var Context::linear_project(Var x, const std::string& name, int out_channels,
                            bool bias) {
  const int in = x.shape().c;
  Var w = param(name + ".weight", Shape{1, out_channels, in}, Init::uniform(in));
  if (!bias) return ops::linear(x, w);
  Var b = param(name + ".bias", Shape{out_channels, 1, 1}, Init::uniform(in));
  return ops::linear(x, w, b);
}

Var Context::conv(Var x, const std::string& name, int out_channels,
                  const ops::ConvSpec& spec, bool bias) {
  const int in = x.shape().c;
  const int fan_in = in * spec.kernel * spec.kernel;
  Var w = param(name + ".weight", Shape{out_channels, in, spec.kernel * spec.kernel},
                Init::uniform(fan_in));
  if (!bias) return ops::conv2d(x, w, std::nullopt, spec);
  Var b = param(name + ".bias", Shape{out_channels, 1, 1}, Init::uniform(fan_in));
  return ops::conv2d(x, w, b, spec);
}

}  // namespace sfg
