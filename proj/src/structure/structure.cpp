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

#include "sfg/structure/structure.hpp"

#include <cmath>

#include "sfg/core/errors.hpp"

namespace sfg::structure {

IsebResult iseb_forward(Context& ctx, Var main, Var aux, const std::string& prefix) {
  const Shape ms = main.shape();
  if (aux.shape().h != ms.h || aux.shape().w != ms.w) aux = ops::resize_bilinear(aux, ms.h, ms.w);
  const int c = ms.c;
  const Var q = ops::to_tokens(ctx.linear_project(main, prefix + ".q", c, false));
  const Var k = ops::to_tokens(ctx.linear_project(aux, prefix + ".k", c, false));
  const Var v = ops::to_tokens(ctx.linear_project(aux, prefix + ".v", c, false));
  if (q.shape().w != k.shape().w) {
    throw ShapeError("iseb: query width " + std::to_string(q.shape().w) + " vs key width " +
                     std::to_string(k.shape().w));
  }
  IsebResult r;
  const Var scores = ops::scale(ops::matmul(q, ops::transpose(k)), 1.0 / std::sqrt(static_cast<double>(c)));
  r.attention = ops::softmax(scores, ops::Axis::kWidth);
  r.attended = ops::from_tokens(ops::matmul(r.attention, v), ms.h, ms.w);
  r.out = ops::add(main, r.attended);
  return r;
}

DecoderResult decoder_forward(Context& ctx, Var f_fs, Var coarse, int out_h, int out_w,
                              bool use_iseb) {
  DecoderResult r;
  Var state = ctx.linear_project(coarse, "dec.entry", kDecoderWidth);
  for (int k = 1; k <= kDecoderStages; ++k) {
    const std::string id = std::to_string(k);
    state = ops::upsample2(state);
    if (use_iseb) state = iseb_forward(ctx, state, f_fs, "dec.iseb" + id).out;
    state = ops::relu(ctx.conv(state, "dec.conv" + id, kDecoderWidth, ops::ConvSpec{}));
    r.stages.push_back(state);
  }
  r.logits = ctx.conv(state, "dec.head", 1, ops::ConvSpec{1, 1, ops::Padding::kZero});
  r.prediction = ops::sigmoid(r.logits);
  if (r.prediction.shape().h != out_h || r.prediction.shape().w != out_w) {
    r.prediction = ops::resize_bilinear(r.prediction, out_h, out_w);
  }
  return r;
}

}  // namespace sfg::structure
