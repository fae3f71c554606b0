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

#include "sfg/spectral/fsf.hpp"

#include <algorithm>
#include <array>

#include "sfg/core/errors.hpp"

namespace sfg::spectral {

FsfResult fsf_forward(Context& ctx, Var f_spa, Var f_freq, const std::string& prefix) {
  if (!(f_spa.shape() == f_freq.shape())) {
    throw ShapeError("fsf: F_spa " + to_string(f_spa.shape()) + " vs F_freq " +
                     to_string(f_freq.shape()));
  }
  const int c = f_spa.shape().c;
  const int hidden = std::max(1, c / 4);

  FsfResult r;
  Var z = ops::global_avg_pool(f_spa);
  z = ops::relu(ctx.linear_project(z, prefix + ".channel_fc1", hidden));
  r.channel_gate = ops::sigmoid(ctx.linear_project(z, prefix + ".channel_fc2", c));
  r.channel_branch = ops::mul_channel(f_spa, r.channel_gate);

  const std::array<Var, 2> stats{ops::channel_mean(f_freq), ops::channel_max(f_freq)};
  const Var logits = ctx.conv(ops::concat_channels(stats), prefix + ".spatial_conv", 1,
                              ops::ConvSpec{7, 1, ops::Padding::kReplicate});
  r.spatial_gate = ops::sigmoid(logits);
  r.spatial_branch = ops::mul_spatial(f_freq, r.spatial_gate);

  const std::array<Var, 2> both{r.channel_branch, r.spatial_branch};
  r.fused = ctx.linear_project(ops::concat_channels(both), prefix + ".merge", c);
  return r;
}

}  // namespace sfg::spectral
