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

#include "sfg/semantic/bca.hpp"

#include <cmath>

#include "sfg/core/errors.hpp"

namespace sfg::semantic {

namespace {

// sum_c a[c,h,w] * b[c] / sqrt(C) as a (1,H,W) map.
Var channel_scores(Var a, Var b) {
  const int c = a.shape().c;
  return ops::scale(ops::channel_mean(ops::mul_channel(a, b)), c / std::sqrt(static_cast<double>(c)));
}

}  // namespace

BcaResult bca_forward(Context& ctx, Var x, Var t) {
  const Shape s = x.shape();
  if (t.shape().h != 1 || t.shape().w != 1) {
    throw ShapeError("bca: text embedding must be a vector, got " + to_string(t.shape()));
  }
  const int c = s.c;
  BcaResult r;

  const Var q = ctx.linear_project(x, "bca.q_vis", c, false);
  const Var k = ctx.linear_project(t, "bca.k_text", c, false);
  const Var v = ctx.linear_project(t, "bca.v_text", c, false);
  r.text_gate = ops::sigmoid(channel_scores(q, k));
  r.x_text = ops::add(x, ops::mul_spatial(ops::expand(v, s.h, s.w), r.text_gate));

  const Var qt = ctx.linear_project(t, "bca.q_text", c, false);
  const Var kv = ctx.linear_project(x, "bca.k_vis", c, false);
  const Var vv = ctx.linear_project(x, "bca.v_vis", c, false);
  const Shape flat{1, 1, s.h * s.w};
  const Var scores = ops::reshape(channel_scores(kv, qt), flat);
  r.attention = ops::reshape(ops::softmax(scores, ops::Axis::kWidth), Shape{1, s.h, s.w});
  const Var pooled = ops::scale(ops::global_avg_pool(ops::mul_spatial(vv, r.attention)),
                                static_cast<double>(s.h * s.w));
  r.text_visual = ctx.linear_project(pooled, "bca.out", c);

  const Var alpha = ctx.param("bca.alpha", Shape{1, 1, 1}, Init::constant(0.5));
  const Var beta = ctx.param("bca.beta", Shape{1, 1, 1}, Init::constant(0.5));
  r.out = ops::add(ops::mul_scalar(r.x_text, alpha),
                   ops::mul_scalar(ops::expand(r.text_visual, s.h, s.w), beta));
  return r;
}

}  // namespace sfg::semantic
