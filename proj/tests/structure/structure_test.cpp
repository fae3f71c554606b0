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

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "common/test_util.hpp"
#include "sfg/core/gradcheck.hpp"
#include "sfg/structure/structure.hpp"

namespace sfg::structure {
namespace {

using testing::random_projection;
using testing::random_tensor;

// ---- straight-line reference pieces over raw tensors ----

Tensor ref_project(const Tensor& x, const Tensor& w, const Tensor* b) {
  const int o_n = w.shape().h, c_n = w.shape().w, h = x.shape().h, wd = x.shape().w;
  Tensor out(Shape{o_n, h, wd});
  for (int o = 0; o < o_n; ++o)
    for (int y = 0; y < h; ++y)
      for (int x0 = 0; x0 < wd; ++x0) {
        double s = b ? (*b)[o] : 0.0;
        for (int c = 0; c < c_n; ++c) s += w.at(0, o, c) * x.at(c, y, x0);
        out.at(o, y, x0) = s;
      }
  return out;
}

Tensor ref_conv3_relu(const Tensor& x, const Tensor& w, const Tensor& b) {
  const int o_n = w.shape().c, c_n = x.channels(), h = x.shape().h, wd = x.shape().w;
  Tensor out(Shape{o_n, h, wd});
  for (int o = 0; o < o_n; ++o)
    for (int y = 0; y < h; ++y)
      for (int x0 = 0; x0 < wd; ++x0) {
        double s = b[o];
        for (int c = 0; c < c_n; ++c)
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              const int yy = y + dy, xx = x0 + dx;
              if (yy < 0 || yy >= h || xx < 0 || xx >= wd) continue;
              s += w.at(o, c, (dy + 1) * 3 + dx + 1) * x.at(c, yy, xx);
            }
        out.at(o, y, x0) = s > 0 ? s : 0;
      }
  return out;
}

Tensor ref_iseb(const ParamStore& p, const std::string& prefix, const Tensor& main, Tensor aux) {
  const int c = main.channels(), h = main.shape().h, w = main.shape().w, n = h * w;
  if (aux.shape().h != h) aux = kernels::resize_bilinear(aux, h, w);
  const Tensor q = ref_project(main, p.at(prefix + ".q.weight").value, nullptr);
  const Tensor k = ref_project(aux, p.at(prefix + ".k.weight").value, nullptr);
  const Tensor v = ref_project(aux, p.at(prefix + ".v.weight").value, nullptr);
  Tensor out = main;
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) {
    double mx = -1e300;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int ch = 0; ch < c; ++ch) s += q[ch * n + i] * k[ch * n + j];
      row[j] = s / std::sqrt(static_cast<double>(c));
      mx = std::max(mx, row[j]);
    }
    double z = 0.0;
    for (double& r : row) z += (r = std::exp(r - mx));
    for (int ch = 0; ch < c; ++ch) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += row[j] / z * v[ch * n + j];
      out[ch * n + i] += s;
    }
  }
  return out;
}

GradCheckOptions checks(int samples) {
  GradCheckOptions o;
  o.samples = samples;
  return o;
}

TEST(IsebTest, ZeroValueProjectionIsPureResidual) {
  const Tensor main = random_tensor({4, 4, 4}, 1);
  ParamStore params(2);
  params.set("iseb.v.weight", Tensor(Shape{1, 4, 4}));
  Tape tape;
  Context ctx(tape, params);
  const IsebResult r = iseb_forward(ctx, ctx.constant(main), ctx.constant(random_tensor({4, 2, 2}, 3)));
  EXPECT_TRUE(bit_equal(r.out.value(), main));
}

TEST(IsebTest, IdenticalAuxTokensGiveUniformRowsAndConstantOutput) {
  const Tensor token = random_tensor({4, 1, 1}, 4);
  Tensor aux(Shape{4, 4, 4});
  for (int c = 0; c < 4; ++c)
    for (double& v : aux.channel(c)) v = token[c];
  ParamStore params(5);
  Tape tape;
  Context ctx(tape, params);
  const IsebResult r = iseb_forward(ctx, ctx.constant(random_tensor({4, 4, 4}, 6)), ctx.constant(aux));
  for (double a : r.attention.value().data()) EXPECT_NEAR(a, 1.0 / 16, 1e-15);
  const Tensor& wv = params.at("iseb.v.weight").value;
  for (int c = 0; c < 4; ++c) {
    double expect = 0.0;
    for (int j = 0; j < 4; ++j) expect += wv.at(0, c, j) * token[j];
    for (double v : r.attended.value().channel(c)) EXPECT_NEAR(v, expect, 1e-14);
  }
}

TEST(IsebTest, TwoTokenHandComputation) {
  // C = 1, two tokens; Q/K/V weights are scalars.
  ParamStore params;
  params.set("iseb.q.weight", Tensor(Shape{1, 1, 1}, 2.0));
  params.set("iseb.k.weight", Tensor(Shape{1, 1, 1}, 0.5));
  params.set("iseb.v.weight", Tensor(Shape{1, 1, 1}, 3.0));
  const Tensor main(Shape{1, 1, 2}, std::vector<double>{1.0, -1.0});
  const Tensor aux(Shape{1, 1, 2}, std::vector<double>{2.0, 4.0});
  Tape tape;
  Context ctx(tape, params);
  const IsebResult r = iseb_forward(ctx, ctx.constant(main), ctx.constant(aux));
  // q = [2, -2], k = [1, 2], v = [6, 12], d = 1.
  // token 0 scores [2, 4] -> weights [1/(1+e^2), e^2/(1+e^2)]
  // token 1 scores [-2, -4] -> weights [e^2/(1+e^2), 1/(1+e^2)]
  const double e2 = std::exp(2.0);
  const double a = 1.0 / (1.0 + e2), b = e2 / (1.0 + e2);
  EXPECT_NEAR(r.attention.value().at(0, 0, 0), a, 1e-12);
  EXPECT_NEAR(r.attention.value().at(0, 0, 1), b, 1e-12);
  EXPECT_NEAR(r.out.value()[0], 1.0 + 6 * a + 12 * b, 1e-12);
  EXPECT_NEAR(r.out.value()[1], -1.0 + 6 * b + 12 * a, 1e-12);
}

TEST(IsebTest, RowsSumToOneAndOutputInValueHull) {
  ParamStore params(7);
  Tape tape;
  Context ctx(tape, params);
  const Tensor aux = random_tensor({8, 4, 4}, 8, -3, 3);
  const IsebResult r = iseb_forward(ctx, ctx.constant(random_tensor({8, 4, 4}, 9, -3, 3)), ctx.constant(aux));
  const Tensor& a = r.attention.value();
  for (int i = 0; i < 16; ++i) {
    double s = 0.0;
    for (int j = 0; j < 16; ++j) s += a.at(0, i, j);
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  const Tensor v = ref_project(aux, params.at("iseb.v.weight").value, nullptr);
  for (int c = 0; c < 8; ++c) {
    const auto vc = v.channel(c);
    const double lo = *std::min_element(vc.begin(), vc.end());
    const double hi = *std::max_element(vc.begin(), vc.end());
    for (double x : r.attended.value().channel(c)) {
      EXPECT_GE(x, lo - 1e-12);
      EXPECT_LE(x, hi + 1e-12);
    }
  }
}

TEST(IsebTest, AuxResampledToMainGridMatchesReference) {
  const Tensor main = random_tensor({4, 8, 8}, 10);
  const Tensor aux = random_tensor({4, 4, 4}, 11);
  ParamStore params(12);
  Tape tape;
  Context ctx(tape, params);
  const IsebResult r = iseb_forward(ctx, ctx.constant(main), ctx.constant(aux));
  EXPECT_LT(max_abs_diff(r.out.value(), ref_iseb(params, "iseb", main, aux)), 1e-12);
}

TEST(IsebTest, GradientCheck) {
  const Tensor main = random_tensor({32, 4, 4}, 13);
  const Tensor aux = random_tensor({32, 8, 8}, 14);
  ParamStore params(15);
  const GradCheckReport r = check_gradients(params, [&](Context& ctx) {
    return random_projection(iseb_forward(ctx, ctx.constant(main), ctx.constant(aux)).out, 1);
  }, checks(30));
  EXPECT_TRUE(r.passed) << r.max_rel_error;
}

TEST(DecoderTest, ZeroHeadGivesHalf) {
  ParamStore params(16);
  params.set("dec.head.weight", Tensor(Shape{1, 32, 1}));
  params.set("dec.head.bias", Tensor(Shape{1, 1, 1}));
  Tape tape;
  Context ctx(tape, params);
  const DecoderResult r = decoder_forward(ctx, ctx.constant(random_tensor({32, 8, 8}, 17)),
                                          ctx.constant(random_tensor({96, 2, 2}, 18)), 64, 64);
  for (double v : r.prediction.value().data()) EXPECT_EQ(v, 0.5);
}

TEST(DecoderTest, OutputMatchesImageShape) {
  for (int size : {64, 128}) {
    ParamStore params(19);
    Tape tape;
    Context ctx(tape, params);
    const DecoderResult r =
        decoder_forward(ctx, ctx.constant(random_tensor({32, size / 8, size / 8}, 20)),
                        ctx.constant(random_tensor({96, size / 32, size / 32}, 21)), size, size);
    EXPECT_EQ(r.prediction.shape(), (Shape{1, size, size}));
    for (double v : r.prediction.value().data()) {
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
    ASSERT_EQ(r.stages.size(), 3u);
    EXPECT_EQ(r.stages.back().shape(), (Shape{32, size / 4, size / 4}));
  }
}

TEST(DecoderTest, MatchesStraightLineComposition) {
  const Tensor f_fs = random_tensor({32, 8, 8}, 22);
  const Tensor coarse = random_tensor({96, 2, 2}, 23);
  ParamStore params(24);
  Tape tape;
  Context ctx(tape, params);
  const DecoderResult r = decoder_forward(ctx, ctx.constant(f_fs), ctx.constant(coarse), 64, 64);

  auto P = [&](const std::string& n) -> const Tensor& { return params.at(n).value; };
  Tensor state = ref_project(coarse, P("dec.entry.weight"), &P("dec.entry.bias"));
  for (int k = 1; k <= 3; ++k) {
    const std::string id = std::to_string(k);
    state = kernels::resize_bilinear(state, state.shape().h * 2, state.shape().w * 2);
    state = ref_iseb(params, "dec.iseb" + id, state, f_fs);
    state = ref_conv3_relu(state, P("dec.conv" + id + ".weight"), P("dec.conv" + id + ".bias"));
  }
  Tensor logit = ref_project(state, P("dec.head.weight").reshaped({1, 1, 32}), &P("dec.head.bias"));
  for (double& v : logit.data()) v = 1.0 / (1.0 + std::exp(-v));
  const Tensor pred = kernels::resize_bilinear(logit, 64, 64);
  EXPECT_LT(max_abs_diff(r.prediction.value(), pred), 1e-9);
}

TEST(DecoderTest, IsebToggleChangesOutput) {
  const Tensor f_fs = random_tensor({32, 8, 8}, 25);
  const Tensor coarse = random_tensor({96, 2, 2}, 26);
  ParamStore params(27);
  auto run = [&](bool iseb) {
    Tape tape;
    Context ctx(tape, params);
    return decoder_forward(ctx, ctx.constant(f_fs), ctx.constant(coarse), 64, 64, iseb).prediction.value();
  };
  const Tensor with = run(true);
  EXPECT_GT(max_abs_diff(with, run(false)), 0.0);
}

TEST(DecoderTest, GradientCheck) {
  const Tensor f_fs = random_tensor({32, 8, 8}, 28);
  const Tensor coarse = random_tensor({96, 2, 2}, 29);
  ParamStore params(30);
  const GradCheckReport r = check_gradients(params, [&](Context& ctx) {
    return random_projection(
        decoder_forward(ctx, ctx.constant(f_fs), ctx.constant(coarse), 64, 64).prediction, 2);
  }, checks(40));
  EXPECT_TRUE(r.passed) << r.max_rel_error;
}

}  // namespace
}  // namespace sfg::structure
