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

#include "sfg/harness/gradsuite.hpp"

#include <chrono>

#include "sfg/core/errors.hpp"
#include "sfg/core/random.hpp"
#include "sfg/harness/model.hpp"
#include "sfg/harness/scene.hpp"
#include "sfg/objective/loss.hpp"
#include "sfg/semantic/bca.hpp"
#include "sfg/semantic/bin.hpp"
#include "sfg/semantic/mfa.hpp"
#include "sfg/semantic/text_encoder.hpp"
#include "sfg/spectral/fsf.hpp"
#include "sfg/spectral/mbfm.hpp"
#include "sfg/structure/structure.hpp"

namespace sfg::harness {

namespace {

Tensor noise(Shape s, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  Rng rng(seed, "gradsuite");
  Tensor t(s);
  for (double& v : t.data()) v = rng.uniform(lo, hi);
  return t;
}

// sum(r * x) for fixed random r.
Var project(Var x, std::uint64_t seed) {
  return ops::sum(ops::mul(x, x.tape().constant(noise(x.shape(), seed ^ 0x9e37ULL))));
}

struct Inputs {
  Scene scene;
  EncodedInput enc;
};

const Inputs& inputs() {
  static const Inputs in = [] {
    Scene s = generate_scene({.seed = 17, .class_name = "lizard"});
    const semantic::StubVisionEncoder encoder;
    EncodedInput e = encode_input(encoder, s.image, s.prompt);
    return Inputs{std::move(s), std::move(e)};
  }();
  return in;
}

Var sum3(Var a, Var b, Var c) { return ops::add(ops::add(a, b), c); }

LossBuilder builder(const std::string& module, ParamStore& params) {
  const Inputs& in = inputs();
  const semantic::FeaturePyramid& pyr = in.enc.pyramid;
  const Tensor& text = in.enc.text;
  if (module == "bin_gate") {
    return [&](Context& ctx) {
      const auto r = semantic::bin_gate(ctx, semantic::as_constants(ctx.tape(), pyr), ctx.constant(text));
      return sum3(project(r.gated.v3, 1), project(r.gated.v4, 2), project(r.gated.v5, 3));
    };
  }
  if (module == "bin_flow") {
    return [&](Context& ctx) {
      const auto r = semantic::bin_flow(ctx, semantic::as_constants(ctx.tape(), pyr));
      return sum3(project(r.p3, 1), project(r.n4, 2), project(r.n5, 3));
    };
  }
  if (module == "bca_forward") {
    return [&](Context& ctx) {
      return project(semantic::bca_forward(ctx, ctx.constant(pyr.v3), ctx.constant(text)).out, 4);
    };
  }
  if (module == "mfa_forward") {
    return [&](Context& ctx) {
      return project(semantic::mfa_forward(ctx, ctx.constant(pyr.v3), ctx.constant(pyr.v4),
                                           ctx.constant(pyr.v5)),
                     5);
    };
  }
  if (module == "mbfm_forward") {
    return [](Context& ctx) {
      return project(spectral::mbfm_forward(ctx, ctx.constant(noise({32, 8, 8}, 6)),
                                            spectral::BandSpec{}),
                     6);
    };
  }
  if (module == "fsf_forward") {
    return [](Context& ctx) {
      return project(spectral::fsf_forward(ctx, ctx.constant(noise({32, 8, 8}, 7)),
                                           ctx.constant(noise({32, 8, 8}, 8)))
                         .fused,
                     7);
    };
  }
  if (module == "iseb_forward") {
    return [](Context& ctx) {
      return project(structure::iseb_forward(ctx, ctx.constant(noise({32, 4, 4}, 9)),
                                             ctx.constant(noise({32, 8, 8}, 10)))
                         .out,
                     8);
    };
  }
  if (module == "decoder_forward") {
    return [&](Context& ctx) {
      return project(structure::decoder_forward(ctx, ctx.constant(noise({32, 8, 8}, 11)),
                                                ctx.constant(pyr.v5), 64, 64)
                         .prediction,
                     9);
    };
  }
  // Loss checks differentiate with respect to prediction logits and the
  // visual branch.
  if (module != "cosine_loss") params.set("logits", noise({1, 64, 64}, 12, -3.0, 3.0));
  const Tensor& gt = in.scene.mask;
  auto pred = [](Context& ctx) { return ops::sigmoid(ctx.param("logits", {1, 64, 64}, Init::zeros())); };
  if (module == "weighted_bce") {
    return [&gt, pred](Context& ctx) { return objective::weighted_bce(pred(ctx), gt); };
  }
  if (module == "weighted_iou") {
    return [&gt, pred](Context& ctx) { return objective::weighted_iou(pred(ctx), gt); };
  }
  if (module == "cosine_loss") {
    params.set("visual", noise({semantic::kTextDim, 1, 1}, 13));
    return [&](Context& ctx) {
      return objective::cosine_loss(ctx.param("visual", {semantic::kTextDim, 1, 1}, Init::zeros()),
                                    ctx.constant(text));
    };
  }
  if (module == "composite_loss") {
    return [&gt, &text, pred](Context& ctx) {
      const Var visual = objective::visual_embedding(ctx, ctx.constant(noise({32, 8, 8}, 14)),
                                                     semantic::kTextDim);
      return objective::composite_loss(pred(ctx), gt, ctx.constant(text), visual).total;
    };
  }
  throw ConfigError("unknown gradcheck module '" + module + "'");
}

}  // namespace

const std::vector<std::string>& grad_check_modules() {
  static const std::vector<std::string> m = {
      "bin_gate",     "bin_flow",     "bca_forward",     "mfa_forward",
      "mbfm_forward", "fsf_forward",  "iseb_forward",    "decoder_forward",
      "weighted_bce", "weighted_iou", "cosine_loss",     "composite_loss"};
  return m;
}

GradCheckResult run_grad_check(const std::string& module, int samples) {
  const auto t0 = std::chrono::steady_clock::now();
  ParamStore params(0x9c);
  const LossBuilder build = builder(module, params);
  GradCheckOptions opt;
  opt.samples = samples;
  GradCheckResult r{module, check_gradients(params, build, opt), 0.0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace sfg::harness
