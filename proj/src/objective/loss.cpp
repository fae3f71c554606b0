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

#include "sfg/objective/loss.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "sfg/core/errors.hpp"

namespace sfg::objective {

namespace {

void require_match(const Var& pred, const Tensor& gt, const char* what) {
  if (!(pred.shape() == gt.shape())) {
    throw ShapeError(std::string(what) + ": prediction " + to_string(pred.shape()) +
                     " vs ground truth " + to_string(gt.shape()));
  }
}

}  // namespace

Tensor boundary_weights(const Tensor& gt) {
  const Tensor blurred = kernels::box_filter_replicate(gt, kWeightWindow);
  Tensor w(gt.shape());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 + 5.0 * std::abs(blurred[i] - gt[i]);
  return w;
}

Var weighted_bce(Var pred, const Tensor& gt) {
  require_match(pred, gt, "weighted_bce");
  auto w = std::make_shared<Tensor>(boundary_weights(gt));
  auto g = std::make_shared<Tensor>(gt);
  const Tensor& p = pred.value();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pc = std::clamp(p[i], kPredClamp, 1.0 - kPredClamp);
    const double bce = -(gt[i] * std::log(pc) + (1.0 - gt[i]) * std::log(1.0 - pc));
    num += (*w)[i] * bce;
    den += (*w)[i];
  }
  const int ip = pred.id();
  return pred.tape().record("weighted_bce", Tensor::scalar(num / den), {pred},
                            [ip, w, g, den](Tape& t, int self) {
    const double go = t.grad(self)[0];
    const Tensor& p = t.value(ip);
    Tensor& gp = t.grad_buffer(ip);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < kPredClamp || p[i] > 1.0 - kPredClamp) continue;
      const double d = -(*g)[i] / p[i] + (1.0 - (*g)[i]) / (1.0 - p[i]);
      gp[i] += go * (*w)[i] * d / den;
    }
  });
}

Var weighted_iou(Var pred, const Tensor& gt) {
  require_match(pred, gt, "weighted_iou");
  auto w = std::make_shared<Tensor>(boundary_weights(gt));
  auto g = std::make_shared<Tensor>(gt);
  const Tensor& p = pred.value();
  double inter = 0.0, uni = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    inter += (*w)[i] * p[i] * gt[i];
    uni += (*w)[i] * (p[i] + gt[i] - p[i] * gt[i]);
  }
  const double a = inter + 1.0, b = uni + 1.0;
  const int ip = pred.id();
  return pred.tape().record("weighted_iou", Tensor::scalar(1.0 - a / b), {pred},
                            [ip, w, g, a, b](Tape& t, int self) {
    const double go = t.grad(self)[0];
    Tensor& gp = t.grad_buffer(ip);
    for (std::size_t i = 0; i < gp.size(); ++i) {
      const double di = (*w)[i] * (*g)[i];
      const double du = (*w)[i] * (1.0 - (*g)[i]);
      gp[i] -= go * (di * b - a * du) / (b * b);
    }
  });
}

Var cosine_loss(Var a, Var b) {
  if (a.shape().numel() != b.shape().numel()) {
    throw ShapeError("cosine_loss: " + to_string(a.shape()) + " vs " + to_string(b.shape()));
  }
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    ab += av[i] * bv[i];
    aa += av[i] * av[i];
    bb += bv[i] * bv[i];
  }
  if (aa == 0.0 || bb == 0.0) throw AlignmentError("cosine_loss: zero-length embedding");
  const double na = std::sqrt(aa), nb = std::sqrt(bb);
  const double cs = ab / (na * nb);
  const int ia = a.id(), ib = b.id();
  return a.tape().record("cosine_loss", Tensor::scalar(1.0 - cs), {a, b},
                         [ia, ib, na, nb, cs](Tape& t, int self) {
    const double go = t.grad(self)[0];
    const Tensor& av = t.value(ia);
    const Tensor& bv = t.value(ib);
    if (t.requires_grad(ia)) {
      Tensor& g = t.grad_buffer(ia);
      for (std::size_t i = 0; i < g.size(); ++i)
        g[i] -= go * (bv[i] / (na * nb) - cs * av[i] / (na * na));
    }
    if (t.requires_grad(ib)) {
      Tensor& g = t.grad_buffer(ib);
      for (std::size_t i = 0; i < g.size(); ++i)
        g[i] -= go * (av[i] / (na * nb) - cs * bv[i] / (nb * nb));
    }
  });
}

Var visual_embedding(Context& ctx, Var f_mfa, int text_dim) {
  return ctx.linear_project(ops::global_avg_pool(f_mfa), "align.visual", text_dim);
}

CompositeLoss composite_loss(Var pred, const Tensor& gt, Var text, Var visual, double lambda) {
  const Var wbce = weighted_bce(pred, gt);
  const Var wiou = weighted_iou(pred, gt);
  const Var cos = cosine_loss(text, visual);
  CompositeLoss out;
  out.total = ops::add(ops::add(wbce, wiou), ops::scale(cos, lambda));
  out.report.l_wbce = wbce.value()[0];
  out.report.l_wiou = wiou.value()[0];
  out.report.l_cos = cos.value()[0];
  out.report.lambda = lambda;
  out.report.total = out.total.value()[0];
  return out;
}

}  // namespace sfg::objective
