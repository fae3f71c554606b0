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

#include "sfg/core/errors.hpp"
#include "sfg/core/params.hpp"
#include "sfg/core/random.hpp"
#include "sfg/core/tensor.hpp"

namespace sfg {
namespace {

TEST(TensorTest, LengthMatchesShape) {
  Tensor t(Shape{3, 4, 5});
  EXPECT_EQ(t.size(), 60u);
  EXPECT_THROW(Tensor(Shape{2, 2, 2}, std::vector<double>(7)), ShapeError);
  EXPECT_THROW(Tensor(Shape{0, 2, 2}), ShapeError);
}

TEST(TensorTest, IndexingIsRowMajor) {
  Tensor t(Shape{2, 3, 4});
  t.at(1, 2, 3) = 7.0;
  EXPECT_EQ(t[1 * 12 + 2 * 4 + 3], 7.0);
  EXPECT_EQ(t.channel(1)[11], 7.0);
}

TEST(TensorTest, BitEqualDistinguishesSignedZero) {
  Tensor a(Shape{1, 1, 2}, 0.0);
  Tensor b = a;
  EXPECT_TRUE(bit_equal(a, b));
  b[1] = -0.0;
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(bit_equal(a, b));
}

TEST(RngTest, CounterBasedDrawsAreIndependentOfOrder) {
  Rng a(42, "stream");
  Rng b(42, "stream");
  const double first = a.uniform();
  b.uniform();
  b.uniform();
  EXPECT_EQ(Rng(42, "stream").uniform_at(0), first);
  EXPECT_NE(Rng(43, "stream").uniform_at(0), first);
  EXPECT_NE(Rng(42, "other").uniform_at(0), first);
}

TEST(ParamStoreTest, InitIsPureFunctionOfSeedNameAndShape) {
  ParamStore a(11);
  ParamStore b(11);
  // Creation order must not matter.
  a.get_or_create("x.weight", Shape{1, 4, 3}, Init::uniform(3));
  a.get_or_create("y.weight", Shape{1, 2, 2}, Init::uniform(2));
  b.get_or_create("y.weight", Shape{1, 2, 2}, Init::uniform(2));
  b.get_or_create("x.weight", Shape{1, 4, 3}, Init::uniform(3));
  EXPECT_TRUE(a == b);

  ParamStore c(12);
  c.get_or_create("x.weight", Shape{1, 4, 3}, Init::uniform(3));
  EXPECT_FALSE(bit_equal(c.at("x.weight").value, a.at("x.weight").value));
}

TEST(ParamStoreTest, UniformInitRespectsFanInBound) {
  ParamStore s(3);
  const Param& p = s.get_or_create("w", Shape{1, 64, 16}, Init::uniform(16));
  for (double v : p.value.data()) {
    EXPECT_LE(std::abs(v), 0.25);
  }
  EXPECT_EQ(p.grad.shape(), p.value.shape());
  for (double g : p.grad.data()) EXPECT_EQ(g, 0.0);
}

TEST(ParamStoreTest, ShapeMismatchOnExistingParameter) {
  ParamStore s(1);
  s.get_or_create("w", Shape{1, 3, 5}, Init::uniform(5));
  EXPECT_THROW(s.get_or_create("w", Shape{1, 3, 4}, Init::uniform(4)), ShapeError);
  EXPECT_THROW(s.set("w", Tensor(Shape{1, 2, 5})), ShapeError);
  EXPECT_THROW(s.at("missing"), ContractError);
}

}  // namespace
}  // namespace sfg
