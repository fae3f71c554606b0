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

#include "sfg/semantic/bin.hpp"

#include "sfg/core/errors.hpp"

namespace sfg::semantic {

namespace {

const ops::ConvSpec kRefine{3, 1, ops::Padding::kZero};

void require_channels(const Var& v, int c, const char* what) {
  if (v.shape().c != c) {
    throw ShapeError(std::string("bin: ") + what + " has shape " + to_string(v.shape()) +
                     ", expected " + std::to_string(c) + " channels");
  }
}

}  // namespace

GateResult bin_gate(Context& ctx, const PyramidVars& v, Var t) {
  require_channels(v.v3, kC3, "v3");
  require_channels(v.v4, kC4, "v4");
  require_channels(v.v5, kC5, "v5");
  if (t.shape().h != 1 || t.shape().w != 1) {
    throw ShapeError("bin: text embedding must be a vector, got " + to_string(t.shape()));
  }
  const Var gates = ops::sigmoid(ctx.linear_project(t, "bin.gate", kC3 + kC4 + kC5, false));
  GateResult r;
  r.g3 = ops::slice_channels(gates, 0, kC3);
  r.g4 = ops::slice_channels(gates, kC3, kC4);
  r.g5 = ops::slice_channels(gates, kC3 + kC4, kC5);
  r.gated.v3 = ops::mul_channel(ctx.linear_project(v.v3, "bin.w3", kC3, false), r.g3);
  r.gated.v4 = ops::mul_channel(ctx.linear_project(v.v4, "bin.w4", kC4, false), r.g4);
  r.gated.v5 = ops::mul_channel(ctx.linear_project(v.v5, "bin.w5", kC5, false), r.g5);
  return r;
}

FlowResult bin_flow(Context& ctx, const PyramidVars& g) {
  auto refine = [&](Var x, const char* name) {
    return ops::relu(ctx.conv(x, name, x.shape().c, kRefine));
  };
  FlowResult r;
  r.p5 = g.v5;
  r.p4 = refine(ops::add(g.v4, ops::upsample2(ctx.linear_project(r.p5, "bin.align_td5", kC4))),
                "bin.f_td4");
  r.p3 = refine(ops::add(g.v3, ops::upsample2(ctx.linear_project(r.p4, "bin.align_td4", kC3))),
                "bin.f_td3");
  r.n3 = r.p3;
  r.n4 = refine(ops::add(r.p4, ops::downsample2(ctx.linear_project(r.n3, "bin.align_bu3", kC4))),
                "bin.f_bu4");
  r.n5 = refine(ops::add(r.p5, ops::downsample2(ctx.linear_project(r.n4, "bin.align_bu4", kC5))),
                "bin.f_bu5");
  return r;
}

}  // namespace sfg::semantic
