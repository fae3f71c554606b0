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

#include <algorithm>
#include <cmath>

#include "common/test_util.hpp"
#include "sfg/core/errors.hpp"
#include "sfg/core/layers.hpp"
#include "sfg/core/ops.hpp"

namespace sfg {
namespace {

using testing::identity_matrix;
using testing::random_tensor;

TEST(LinearProjectTest, IdentityWeightReturnsInput) {
  Tape tape;
  ParamStore params;
  params.set("p.weight", identity_matrix(4));
  Context ctx(tape, params);
  const Tensor x = random_tensor(Shape{4, 3, 5}, 1);
  Var y = ctx.linear_project(ctx.constant(x), "p", 4, /*bias=*/false);
  EXPECT_TRUE(bit_equal(y.value(), x));
}

TEST(LinearProjectTest, AllOnesRowSumsChannels) {
  Tape tape;
  ParamStore params;
  params.set("p.weight", Tensor(Shape{1, 1, 6}, 1.0));
  Context ctx(tape, params);
  Var y = ctx.linear_project(ctx.constant(Tensor(Shape{6, 2, 2}, 1.0)), "p", 1, false);
  ASSERT_EQ(y.shape(), (Shape{1, 2, 2}));
  for (double v : y.value().data()) EXPECT_EQ(v, 6.0);
}

TEST(LinearProjectTest, MatchesTripleLoopMatmul) {
  const Tensor w = random_tensor(Shape{1, 3, 5}, 2);
  const Tensor x = random_tensor(Shape{5, 4, 6}, 3);
  Tape tape;
  Var y = ops::linear(tape.constant(x), tape.constant(w));
  // Naive oracle.
  Tensor expect(Shape{3, 4, 6});
  for (int o = 0; o < 3; ++o)
    for (int h = 0; h < 4; ++h)
      for (int ww = 0; ww < 6; ++ww) {
        double acc = 0.0;
        for (int c = 0; c < 5; ++c) acc += w.at(0, o, c) * x.at(c, h, ww);
        expect.at(o, h, ww) = acc;
      }
  EXPECT_LT(max_abs_diff(y.value(), expect), 1e-12);
}

TEST(LinearProjectTest, VectorInputIsDenseMatrix) {
  Tape tape;
  const Tensor w = Tensor::matrix(2, 3, {1, 2, 3, 4, 5, 6});
  Var y = ops::linear(tape.constant(Tensor::vector({1, 0, -1})), tape.constant(w),
                      tape.constant(Tensor::vector({0.5, -0.5})));
  EXPECT_EQ(y.shape(), (Shape{2, 1, 1}));
  EXPECT_DOUBLE_EQ(y.value()[0], -2.0 + 0.5);
  EXPECT_DOUBLE_EQ(y.value()[1], -2.0 - 0.5);
}

TEST(LinearProjectTest, ChannelMismatchWithExistingParameter) {
  Tape tape;
  ParamStore params;
  Context ctx(tape, params);
  ctx.linear_project(ctx.constant(Tensor(Shape{4, 2, 2})), "p", 3);
  EXPECT_THROW(ctx.linear_project(ctx.constant(Tensor(Shape{5, 2, 2})), "p", 3),
               ShapeError);
}

TEST(LinearProjectTest, IsLinearWithoutBias) {
  const Tensor w = random_tensor(Shape{1, 3, 4}, 4);
  const Tensor x = random_tensor(Shape{4, 5, 5}, 5);
  const Tensor y = random_tensor(Shape{4, 5, 5}, 6);
  for (double a : {-1.5, 0.25, 3.0}) {
    for (double b : {-2.0, 0.5}) {
      Tape tape;
      Var W = tape.constant(w);
      Var combo = ops::add(ops::scale(tape.constant(x), a), ops::scale(tape.constant(y), b));
      Var lhs = ops::linear(combo, W);
      Var rhs = ops::add(ops::scale(ops::linear(tape.constant(x), W), a),
                         ops::scale(ops::linear(tape.constant(y), W), b));
      EXPECT_LT(max_abs_diff(lhs.value(), rhs.value()), 1e-10);
    }
  }
}

TEST(ActivationTest, SigmoidValues) {
  Tape tape;
  Var y = ops::sigmoid(tape.constant(Tensor::vector({0.0, 20.0, -20.0, 800.0, -800.0})));
  EXPECT_EQ(y.value()[0], 0.5);
  EXPECT_NEAR(y.value()[1], 1.0, 1e-8);
  EXPECT_NEAR(y.value()[2], 0.0, 1e-8);
  EXPECT_TRUE(y.value().all_finite());
}

TEST(ActivationTest, ReluIsNonNegative) {
  Tape tape;
  Var y = ops::relu(tape.constant(random_tensor(Shape{2, 4, 4}, 9)));
  for (double v : y.value().data()) EXPECT_GE(v, 0.0);
}

TEST(ActivationTest, SoftmaxOfEqualEntriesIsUniform) {
  Tape tape;
  Var y = ops::softmax(tape.constant(Tensor::matrix(1, 3, {4.0, 4.0, 4.0})), ops::Axis::kWidth);
  for (double v : y.value().data()) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
}

TEST(ActivationTest, SoftmaxSlicesSumToOneForBoundedInputs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Tape tape;
    const Tensor x = random_tensor(Shape{3, 5, 7}, seed, -50.0, 50.0);
    Var w = ops::softmax(tape.constant(x), ops::Axis::kWidth);
    for (int c = 0; c < 3; ++c)
      for (int h = 0; h < 5; ++h) {
        double s = 0.0;
        for (int i = 0; i < 7; ++i) s += w.value().at(c, h, i);
        EXPECT_NEAR(s, 1.0, 1e-9);
      }
    Var ch = ops::softmax(tape.constant(x), ops::Axis::kChannel);
    for (int h = 0; h < 5; ++h)
      for (int i = 0; i < 7; ++i) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += ch.value().at(c, h, i);
        EXPECT_NEAR(s, 1.0, 1e-9);
      }
  }
}

TEST(PoolTest, GapOfOnes) {
  Tape tape;
  Var g = ops::global_avg_pool(tape.constant(Tensor(Shape{4, 8, 8}, 1.0)));
  ASSERT_EQ(g.shape(), (Shape{4, 1, 1}));
  for (double v : g.value().data()) EXPECT_EQ(v, 1.0);
}

TEST(PoolTest, MaxPoolSpreadsPeakToNeighbourhood) {
  Tensor x(Shape{1, 7, 7});
  x.at(0, 3, 4) = 9.0;
  Tape tape;
  Var y = ops::max_pool(tape.constant(x), 3);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) {
      const bool near = std::abs(r - 3) <= 1 && std::abs(c - 4) <= 1;
      EXPECT_EQ(y.value().at(0, r, c), near ? 9.0 : 0.0) << r << "," << c;
    }
}

TEST(PoolTest, AvgPoolOnRampMatchesDirectWindowSums) {
  Tensor x(Shape{1, 6, 9});
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 9; ++c) x.at(0, r, c) = 0.7 * r + 1.3 * c;
  Tape tape;
  Var y = ops::avg_pool(tape.constant(x), 3);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 9; ++c) {
      double acc = 0.0;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          const int rr = std::clamp(r + dr, 0, 5);
          const int cc = std::clamp(c + dc, 0, 8);
          acc += x.at(0, rr, cc);
        }
      EXPECT_NEAR(y.value().at(0, r, c), acc / 9.0, 1e-12);
    }
}

TEST(PoolTest, EmptyOrEvenKernelRejected) {
  Tape tape;
  EXPECT_THROW(ops::avg_pool(tape.constant(Tensor(Shape{1, 4, 4})), 2), ShapeError);
}

TEST(PoolTest, ChannelMeanAndMax) {
  Tensor x(Shape{3, 1, 2}, std::vector<double>{1, -4, 2, 5, 3, 0});
  Tape tape;
  Var m = ops::channel_mean(tape.constant(x));
  Var M = ops::channel_max(tape.constant(x));
  EXPECT_DOUBLE_EQ(m.value()[0], 2.0);
  EXPECT_DOUBLE_EQ(m.value()[1], 1.0 / 3.0);
  EXPECT_EQ(M.value()[0], 3.0);
  EXPECT_EQ(M.value()[1], 5.0);
}

TEST(ResampleTest, UpsampleConstantStaysConstant) {
  Tape tape;
  Var y = ops::upsample2(tape.constant(Tensor(Shape{2, 3, 5}, 1.75)));
  ASSERT_EQ(y.shape(), (Shape{2, 6, 10}));
  for (double v : y.value().data()) EXPECT_EQ(v, 1.75);
  Var back = ops::downsample2(y);
  EXPECT_TRUE(bit_equal(back.value(), Tensor(Shape{2, 3, 5}, 1.75)));
}

TEST(ResampleTest, UpsampleCheckerboardMatchesHandWeights) {
  Tape tape;
  Var y = ops::upsample2(tape.constant(Tensor(Shape{1, 2, 2}, std::vector<double>{1, 0, 0, 1})));
  // Half-pixel bilinear: output rows/cols sample the input at
  // {0, 0.25, 0.75, 1}, so out[r][c] = a_r a_c + b_r b_c with
  // a = {1, .75, .25, 0}, b = 1 - a.
  const double expect[4][4] = {{1.0, 0.75, 0.25, 0.0},
                               {0.75, 0.625, 0.375, 0.25},
                               {0.25, 0.375, 0.625, 0.75},
                               {0.0, 0.25, 0.75, 1.0}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(y.value().at(0, r, c), expect[r][c], 1e-15);
}

TEST(ResampleTest, DownsampleRejectsOddDims) {
  Tape tape;
  EXPECT_THROW(ops::downsample2(tape.constant(Tensor(Shape{1, 3, 4}))), ShapeError);
}

TEST(ConcatTest, SingleInputIsIdentity) {
  Tape tape;
  const Tensor x = random_tensor(Shape{3, 2, 2}, 4);
  const Var parts[] = {tape.constant(x)};
  EXPECT_TRUE(bit_equal(ops::concat_channels(parts).value(), x));
}

TEST(ConcatTest, SlicesRecoverParts) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Tape tape;
    const Tensor a = random_tensor(Shape{2, 3, 4}, seed);
    const Tensor b = random_tensor(Shape{3, 3, 4}, seed + 100);
    const Var parts[] = {tape.constant(a), tape.constant(b)};
    Var cat = ops::concat_channels(parts);
    EXPECT_EQ(cat.shape().c, 5);
    EXPECT_TRUE(bit_equal(ops::slice_channels(cat, 0, 2).value(), a));
    EXPECT_TRUE(bit_equal(ops::slice_channels(cat, 2, 3).value(), b));
  }
}

TEST(ConcatTest, SpatialMismatchRejected) {
  Tape tape;
  const Var parts[] = {tape.constant(Tensor(Shape{1, 2, 2})), tape.constant(Tensor(Shape{1, 2, 3}))};
  EXPECT_THROW(ops::concat_channels(parts), ShapeError);
}

TEST(ConvTest, MatchesDirectSumWithZeroPadding) {
  const Tensor x = random_tensor(Shape{2, 5, 6}, 10);
  const Tensor w = random_tensor(Shape{3, 2, 9}, 11);
  Tape tape;
  Var y = ops::conv2d(tape.constant(x), tape.constant(w), std::nullopt, {3, 2, ops::Padding::kZero});
  ASSERT_EQ(y.shape(), (Shape{3, 3, 3}));
  for (int o = 0; o < 3; ++o)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int ci = 0; ci < 2; ++ci)
          for (int ky = 0; ky < 3; ++ky)
            for (int kx = 0; kx < 3; ++kx) {
              const int rr = 2 * r + ky - 1, cc = 2 * c + kx - 1;
              if (rr < 0 || rr >= 5 || cc < 0 || cc >= 6) continue;
              acc += w.at(o, ci, ky * 3 + kx) * x.at(ci, rr, cc);
            }
        EXPECT_NEAR(y.value().at(o, r, c), acc, 1e-12);
      }
}

TEST(SpaceToDepthTest, MovesPixelsIntoChannels) {
  Tensor x(Shape{1, 4, 4});
  for (int i = 0; i < 16; ++i) x[i] = i;
  Tape tape;
  Var y = ops::space_to_depth(tape.constant(x), 2);
  ASSERT_EQ(y.shape(), (Shape{4, 2, 2}));
  EXPECT_EQ(y.value().at(0, 0, 0), 0.0);
  EXPECT_EQ(y.value().at(1, 0, 0), 1.0);
  EXPECT_EQ(y.value().at(2, 0, 0), 4.0);
  EXPECT_EQ(y.value().at(3, 1, 1), 15.0);
}

}  // namespace
}  // namespace sfg
