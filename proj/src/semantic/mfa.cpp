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

#include "sfg/semantic/mfa.hpp"

#include <array>

namespace sfg::semantic {

namespace {

std::array<Var, 3> align(Context& ctx, Var f3, Var f4, Var f5) {
  const int h = f3.shape().h, w = f3.shape().w;
  auto one = [&](Var f, const char* name) {
    Var p = ctx.linear_project(f, name, kMfaWidth);
    if (p.shape().h != h || p.shape().w != w) p = ops::resize_bilinear(p, h, w);
    return p;
  };
  return {one(f3, "mfa.proj3"), one(f4, "mfa.proj4"), one(f5, "mfa.proj5")};
}

}  // namespace

Var mfa_forward(Context& ctx, Var f3, Var f4, Var f5) {
  const std::array<Var, 3> parts = align(ctx, f3, f4, f5);
  return ctx.linear_project(ops::concat_channels(parts), "mfa.fuse", kMfaWidth);
}

Var mean_fuse(Context& ctx, Var f3, Var f4, Var f5) {
  const std::array<Var, 3> parts = align(ctx, f3, f4, f5);
  return ops::scale(ops::add(ops::add(parts[0], parts[1]), parts[2]), 1.0 / 3.0);
}

}  // namespace sfg::semantic
