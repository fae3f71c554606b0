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

#include "sfg/core/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "sfg/core/errors.hpp"

namespace sfg {
namespace {

void require(bool ok, const char* op, const std::string& detail) {
  if (!ok) throw ShapeError(std::string(op) + ": " + detail);
}

void require_same(const Var& a, const Var& b, const char* op) {
  require(a.shape() == b.shape(), op,
          to_string(a.shape()) + " vs " + to_string(b.shape()));
}

int clampi(int v, int lo, int hi) { return std::max(lo, std::min(v, hi)); }

struct BilinearAxis {
  std::vector<int> i0;
  std::vector<int> i1;
  std::vector<double> frac;
};

BilinearAxis bilinear_axis(int in, int out) {
  BilinearAxis a;
  a.i0.resize(out);
  a.i1.resize(out);
  a.frac.resize(out);
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  for (int d = 0; d < out; ++d) {
    double src = (d + 0.5) * scale - 0.5;
    if (src < 0.0) src = 0.0;
    int lo = static_cast<int>(std::floor(src));
    if (lo > in - 1) lo = in - 1;
    a.i0[d] = lo;
    a.i1[d] = std::min(lo + 1, in - 1);
    a.frac[d] = src - lo;
  }
  return a;
}

}  // namespace

namespace kernels {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor resize_bilinear(const Tensor& x, int h, int w) {
  const Shape s = x.shape();
  const BilinearAxis ay = bilinear_axis(s.h, h);
  const BilinearAxis ax = bilinear_axis(s.w, w);
  Tensor out(Shape{s.c, h, w});
  for (int c = 0; c < s.c; ++c) {
    for (int y = 0; y < h; ++y) {
      const double ly = ay.frac[y];
      for (int xx = 0; xx < w; ++xx) {
        const double lx = ax.frac[xx];
        out.at(c, y, xx) = (1 - ly) * ((1 - lx) * x.at(c, ay.i0[y], ax.i0[xx]) +
                                       lx * x.at(c, ay.i0[y], ax.i1[xx])) +
                           ly * ((1 - lx) * x.at(c, ay.i1[y], ax.i0[xx]) +
                                 lx * x.at(c, ay.i1[y], ax.i1[xx]));
      }
    }
  }
  return out;
}

Tensor box_filter_replicate(const Tensor& x, int k) {
  if (k <= 0 || k % 2 == 0) throw ShapeError("box filter needs an odd kernel");
  if (x.empty()) throw ShapeError("box filter on empty input");
  const Shape s = x.shape();
  const int r = k / 2;
  Tensor rows(s);
  for (int c = 0; c < s.c; ++c)
    for (int y = 0; y < s.h; ++y)
      for (int xx = 0; xx < s.w; ++xx) {
        double acc = 0.0;
        for (int d = -r; d <= r; ++d) acc += x.at(c, y, clampi(xx + d, 0, s.w - 1));
        rows.at(c, y, xx) = acc;
      }
  Tensor out(s);
  const double norm = 1.0 / (static_cast<double>(k) * k);
  for (int c = 0; c < s.c; ++c)
    for (int y = 0; y < s.h; ++y)
      for (int xx = 0; xx < s.w; ++xx) {
        double acc = 0.0;
        for (int d = -r; d <= r; ++d) acc += rows.at(c, clampi(y + d, 0, s.h - 1), xx);
        out.at(c, y, xx) = acc * norm;
      }
  return out;
}

}  // namespace kernels

namespace ops {

Var add(Var a, Var b) {
  require_same(a, b, "add");
  Tensor out = a.value();
  out.accumulate(b.value());
  const int ia = a.id(), ib = b.id();
  return a.tape().record("add", std::move(out), {a, b}, [ia, ib](Tape& t, int self) {
    if (t.requires_grad(ia)) t.grad_buffer(ia).accumulate(t.grad(self));
    if (t.requires_grad(ib)) t.grad_buffer(ib).accumulate(t.grad(self));
  });
}

Var sub(Var a, Var b) {
  require_same(a, b, "sub");
  Tensor out = a.value();
  out.accumulate(b.value(), -1.0);
  const int ia = a.id(), ib = b.id();
  return a.tape().record("sub", std::move(out), {a, b}, [ia, ib](Tape& t, int self) {
    if (t.requires_grad(ia)) t.grad_buffer(ia).accumulate(t.grad(self));
    if (t.requires_grad(ib)) t.grad_buffer(ib).accumulate(t.grad(self), -1.0);
  });
}

Var mul(Var a, Var b) {
  require_same(a, b, "mul");
  Tensor out = a.value();
  const Tensor& bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  const int ia = a.id(), ib = b.id();
  return a.tape().record("mul", std::move(out), {a, b}, [ia, ib](Tape& t, int self) {
    const Tensor& g = t.grad(self);
    if (t.requires_grad(ia)) {
      Tensor& ga = t.grad_buffer(ia);
      const Tensor& bv = t.value(ib);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
    }
    if (t.requires_grad(ib)) {
      Tensor& gb = t.grad_buffer(ib);
      const Tensor& av = t.value(ia);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
    }
  });
}

Var scale(Var a, double s) {
  Tensor out = a.value();
  for (double& v : out.data()) v *= s;
  const int ia = a.id();
  return a.tape().record("scale", std::move(out), {a}, [ia, s](Tape& t, int self) {
    t.grad_buffer(ia).accumulate(t.grad(self), s);
  });
}

Var sigmoid(Var x) {
  Tensor out = x.value();
  for (double& v : out.data()) v = kernels::sigmoid(v);
  const int ix = x.id();
  return x.tape().record("sigmoid", std::move(out), {x}, [ix](Tape& t, int self) {
    const Tensor& g = t.grad(self);
    const Tensor& y = t.value(self);
    Tensor& gx = t.grad_buffer(ix);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * y[i] * (1.0 - y[i]);
  });
}

Var relu(Var x) {
  Tensor out = x.value();
  for (double& v : out.data()) v = v > 0.0 ? v : 0.0;
  const int ix = x.id();
  return x.tape().record("relu", std::move(out), {x}, [ix](Tape& t, int self) {
    const Tensor& g = t.grad(self);
    const Tensor& xv = t.value(ix);
    Tensor& gx = t.grad_buffer(ix);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (xv[i] > 0.0) gx[i] += g[i];
  });
}

Var mul_channel(Var x, Var g) {
  const Shape s = x.shape();
  require(g.shape() == Shape{s.c, 1, 1}, "mul_channel",
          "gate " + to_string(g.shape()) + " for " + to_string(s));
  Tensor out = x.value();
  const Tensor& gv = g.value();
  for (int c = 0; c < s.c; ++c)
    for (double& v : out.channel(c)) v *= gv[c];
  const int ix = x.id(), ig = g.id();
  return x.tape().record("mul_channel", std::move(out), {x, g}, [ix, ig](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    const Shape s = go.shape();
    const std::size_t plane = s.plane();
    if (t.requires_grad(ix)) {
      Tensor& gx = t.grad_buffer(ix);
      const Tensor& gv = t.value(ig);
      for (int c = 0; c < s.c; ++c)
        for (std::size_t p = 0; p < plane; ++p) gx[c * plane + p] += go[c * plane + p] * gv[c];
    }
    if (t.requires_grad(ig)) {
      Tensor& gg = t.grad_buffer(ig);
      const Tensor& xv = t.value(ix);
      for (int c = 0; c < s.c; ++c) {
        double acc = 0.0;
        for (std::size_t p = 0; p < plane; ++p) acc += go[c * plane + p] * xv[c * plane + p];
        gg[c] += acc;
      }
    }
  });
}

Var mul_spatial(Var x, Var m) {
  const Shape s = x.shape();
  require(m.shape() == Shape{1, s.h, s.w}, "mul_spatial",
          "map " + to_string(m.shape()) + " for " + to_string(s));
  Tensor out = x.value();
  const Tensor& mv = m.value();
  const std::size_t plane = s.plane();
  for (int c = 0; c < s.c; ++c)
    for (std::size_t p = 0; p < plane; ++p) out[c * plane + p] *= mv[p];
  const int ix = x.id(), im = m.id();
  return x.tape().record("mul_spatial", std::move(out), {x, m}, [ix, im](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    const Shape s = go.shape();
    const std::size_t plane = s.plane();
    if (t.requires_grad(ix)) {
      Tensor& gx = t.grad_buffer(ix);
      const Tensor& mv = t.value(im);
      for (int c = 0; c < s.c; ++c)
        for (std::size_t p = 0; p < plane; ++p) gx[c * plane + p] += go[c * plane + p] * mv[p];
    }
    if (t.requires_grad(im)) {
      Tensor& gm = t.grad_buffer(im);
      const Tensor& xv = t.value(ix);
      for (int c = 0; c < s.c; ++c)
        for (std::size_t p = 0; p < plane; ++p) gm[p] += go[c * plane + p] * xv[c * plane + p];
    }
  });
}

Var mul_scalar(Var x, Var s) {
  require(s.shape().is_scalar(), "mul_scalar", "factor " + to_string(s.shape()));
  Tensor out = x.value();
  const double sv = s.value()[0];
  for (double& v : out.data()) v *= sv;
  const int ix = x.id(), is = s.id();
  return x.tape().record("mul_scalar", std::move(out), {x, s}, [ix, is](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    if (t.requires_grad(ix)) t.grad_buffer(ix).accumulate(go, t.value(is)[0]);
    if (t.requires_grad(is)) {
      const Tensor& xv = t.value(ix);
      double acc = 0.0;
      for (std::size_t i = 0; i < go.size(); ++i) acc += go[i] * xv[i];
      t.grad_buffer(is)[0] += acc;
    }
  });
}

Var expand(Var v, int h, int w) {
  const Shape s = v.shape();
  require(s.h == 1 && s.w == 1, "expand", "needs a (C,1,1) vector, got " + to_string(s));
  Tensor out(Shape{s.c, h, w});
  for (int c = 0; c < s.c; ++c) std::fill(out.channel(c).begin(), out.channel(c).end(), v.value()[c]);
  const int iv = v.id();
  return v.tape().record("expand", std::move(out), {v}, [iv](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gv = t.grad_buffer(iv);
    for (int c = 0; c < go.channels(); ++c) {
      double acc = 0.0;
      for (double g : go.channel(c)) acc += g;
      gv[c] += acc;
    }
  });
}

Var linear(Var x, Var w, std::optional<Var> b) {
  const Shape xs = x.shape();
  const Shape ws = w.shape();
  require(ws.c == 1 && ws.w == xs.c, "linear",
          "weight " + to_string(ws) + " for input " + to_string(xs));
  const int out_c = ws.h;
  if (b) {
    require(b->shape() == Shape{out_c, 1, 1}, "linear", "bias " + to_string(b->shape()));
  }
  const std::size_t plane = xs.plane();
  Tensor out(Shape{out_c, xs.h, xs.w});
  const Tensor& xv = x.value();
  const Tensor& wv = w.value();
  for (int o = 0; o < out_c; ++o) {
    double* dst = out.data().data() + o * plane;
    if (b) std::fill(dst, dst + plane, b->value()[o]);
    for (int c = 0; c < xs.c; ++c) {
      const double k = wv[static_cast<std::size_t>(o) * xs.c + c];
      if (k == 0.0) continue;
      const double* src = xv.data().data() + c * plane;
      for (std::size_t p = 0; p < plane; ++p) dst[p] += k * src[p];
    }
  }
  const int ix = x.id(), iw = w.id(), ib = b ? b->id() : -1;
  std::vector<Var> inputs{x, w};
  if (b) inputs.push_back(*b);
  return x.tape().record("linear", std::move(out), inputs, [ix, iw, ib](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    const Tensor& xv = t.value(ix);
    const Tensor& wv = t.value(iw);
    const int out_c = go.channels();
    const int in_c = xv.channels();
    const std::size_t plane = go.shape().plane();
    if (t.requires_grad(ix)) {
      Tensor& gx = t.grad_buffer(ix);
      for (int o = 0; o < out_c; ++o) {
        const double* g = go.data().data() + o * plane;
        for (int c = 0; c < in_c; ++c) {
          const double k = wv[static_cast<std::size_t>(o) * in_c + c];
          double* dst = gx.data().data() + c * plane;
          for (std::size_t p = 0; p < plane; ++p) dst[p] += k * g[p];
        }
      }
    }
    if (t.requires_grad(iw)) {
      Tensor& gw = t.grad_buffer(iw);
      for (int o = 0; o < out_c; ++o) {
        const double* g = go.data().data() + o * plane;
        for (int c = 0; c < in_c; ++c) {
          const double* src = xv.data().data() + c * plane;
          double acc = 0.0;
          for (std::size_t p = 0; p < plane; ++p) acc += g[p] * src[p];
          gw[static_cast<std::size_t>(o) * in_c + c] += acc;
        }
      }
    }
    if (ib >= 0 && t.requires_grad(ib)) {
      Tensor& gb = t.grad_buffer(ib);
      for (int o = 0; o < out_c; ++o) {
        double acc = 0.0;
        for (double g : go.channel(o)) acc += g;
        gb[o] += acc;
      }
    }
  });
}

namespace {

// Source index per (tap, output position) along one axis; -1 marks a zero pad.
std::vector<int> conv_axis_map(int in, int out, int k, int stride, Padding pad) {
  const int p = k / 2;
  std::vector<int> m(static_cast<std::size_t>(k) * out);
  for (int t = 0; t < k; ++t)
    for (int o = 0; o < out; ++o) {
      int i = o * stride + t - p;
      if (i < 0 || i >= in) i = pad == Padding::kReplicate ? clampi(i, 0, in - 1) : -1;
      m[static_cast<std::size_t>(t) * out + o] = i;
    }
  return m;
}

}  // namespace

Var conv2d(Var x, Var w, std::optional<Var> b, const ConvSpec& spec) {
  const Shape xs = x.shape();
  const Shape ws = w.shape();
  const int k = spec.kernel;
  require(k > 0 && k % 2 == 1, "conv2d", "kernel must be odd");
  require(spec.stride >= 1, "conv2d", "stride must be positive");
  require(ws.h == xs.c && ws.w == k * k, "conv2d",
          "weight " + to_string(ws) + " for input " + to_string(xs) + " kernel " +
              std::to_string(k));
  const int out_c = ws.c;
  if (b) require(b->shape() == Shape{out_c, 1, 1}, "conv2d", "bias " + to_string(b->shape()));
  const int pad = k / 2;
  const int oh = (xs.h + 2 * pad - k) / spec.stride + 1;
  const int ow = (xs.w + 2 * pad - k) / spec.stride + 1;
  require(oh > 0 && ow > 0, "conv2d", "empty output for " + to_string(xs));
  auto ymap = std::make_shared<std::vector<int>>(conv_axis_map(xs.h, oh, k, spec.stride, spec.padding));
  auto xmap = std::make_shared<std::vector<int>>(conv_axis_map(xs.w, ow, k, spec.stride, spec.padding));

  Tensor out(Shape{out_c, oh, ow});
  const Tensor& xv = x.value();
  const Tensor& wv = w.value();
  for (int o = 0; o < out_c; ++o) {
    if (b) {
      std::fill(out.channel(o).begin(), out.channel(o).end(), b->value()[o]);
    }
    for (int c = 0; c < xs.c; ++c) {
      const double* src = xv.data().data() + c * xs.plane();
      for (int ky = 0; ky < k; ++ky)
        for (int kx = 0; kx < k; ++kx) {
          const double kv = wv[(static_cast<std::size_t>(o) * xs.c + c) * k * k + ky * k + kx];
          if (kv == 0.0) continue;
          const int* ym = ymap->data() + ky * oh;
          const int* xm = xmap->data() + kx * ow;
          for (int oy = 0; oy < oh; ++oy) {
            if (ym[oy] < 0) continue;
            const double* row = src + static_cast<std::size_t>(ym[oy]) * xs.w;
            double* dst = out.data().data() + (static_cast<std::size_t>(o) * oh + oy) * ow;
            for (int ox = 0; ox < ow; ++ox)
              if (xm[ox] >= 0) dst[ox] += kv * row[xm[ox]];
          }
        }
    }
  }

  const int ix = x.id(), iw = w.id(), ib = b ? b->id() : -1;
  std::vector<Var> inputs{x, w};
  if (b) inputs.push_back(*b);
  return x.tape().record(
      "conv2d", std::move(out), inputs, [ix, iw, ib, k, ymap, xmap](Tape& t, int self) {
        const Tensor& go = t.grad(self);
        const Tensor& xv = t.value(ix);
        const Tensor& wv = t.value(iw);
        const Shape xs = xv.shape();
        const int out_c = go.channels(), oh = go.height(), ow = go.width();
        const bool need_x = t.requires_grad(ix);
        const bool need_w = t.requires_grad(iw);
        Tensor* gx = need_x ? &t.grad_buffer(ix) : nullptr;
        Tensor* gw = need_w ? &t.grad_buffer(iw) : nullptr;
        for (int o = 0; o < out_c; ++o) {
          for (int c = 0; c < xs.c; ++c) {
            const double* src = xv.data().data() + c * xs.plane();
            for (int ky = 0; ky < k; ++ky)
              for (int kx = 0; kx < k; ++kx) {
                const std::size_t widx =
                    (static_cast<std::size_t>(o) * xs.c + c) * k * k + ky * k + kx;
                const double kv = wv[widx];
                const int* ym = ymap->data() + ky * oh;
                const int* xm = xmap->data() + kx * ow;
                double acc = 0.0;
                for (int oy = 0; oy < oh; ++oy) {
                  if (ym[oy] < 0) continue;
                  const std::size_t roff = static_cast<std::size_t>(ym[oy]) * xs.w;
                  const double* g = go.data().data() + (static_cast<std::size_t>(o) * oh + oy) * ow;
                  for (int ox = 0; ox < ow; ++ox) {
                    if (xm[ox] < 0) continue;
                    acc += g[ox] * src[roff + xm[ox]];
                    if (gx) (*gx)[c * xs.plane() + roff + xm[ox]] += kv * g[ox];
                  }
                }
                if (gw) (*gw)[widx] += acc;
              }
          }
        }
        if (ib >= 0 && t.requires_grad(ib)) {
          Tensor& gb = t.grad_buffer(ib);
          for (int o = 0; o < out_c; ++o) {
            double acc = 0.0;
            for (double g : go.channel(o)) acc += g;
            gb[o] += acc;
          }
        }
      });
}

Var matmul(Var a, Var b) {
  const Shape as = a.shape(), bs = b.shape();
  require(as.c == 1 && bs.c == 1 && as.w == bs.h, "matmul",
          to_string(as) + " x " + to_string(bs));
  const int rows = as.h, inner = as.w, cols = bs.w;
  Tensor out(Shape{1, rows, cols});
  const double* A = a.value().data().data();
  const double* B = b.value().data().data();
  double* C = out.data().data();
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < inner; ++k) {
      const double av = A[static_cast<std::size_t>(r) * inner + k];
      const double* brow = B + static_cast<std::size_t>(k) * cols;
      double* crow = C + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) crow[c] += av * brow[c];
    }
  const int ia = a.id(), ib = b.id();
  return a.tape().record("matmul", std::move(out), {a, b}, [ia, ib](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    const Tensor& av = t.value(ia);
    const Tensor& bv = t.value(ib);
    const int rows = av.height(), inner = av.width(), cols = bv.width();
    if (t.requires_grad(ia)) {
      Tensor& ga = t.grad_buffer(ia);
      for (int r = 0; r < rows; ++r)
        for (int k = 0; k < inner; ++k) {
          double acc = 0.0;
          for (int c = 0; c < cols; ++c)
            acc += go[static_cast<std::size_t>(r) * cols + c] * bv[static_cast<std::size_t>(k) * cols + c];
          ga[static_cast<std::size_t>(r) * inner + k] += acc;
        }
    }
    if (t.requires_grad(ib)) {
      Tensor& gb = t.grad_buffer(ib);
      for (int r = 0; r < rows; ++r)
        for (int k = 0; k < inner; ++k) {
          const double a_rk = av[static_cast<std::size_t>(r) * inner + k];
          for (int c = 0; c < cols; ++c)
            gb[static_cast<std::size_t>(k) * cols + c] += a_rk * go[static_cast<std::size_t>(r) * cols + c];
        }
    }
  });
}

Var transpose(Var a) {
  const Shape s = a.shape();
  require(s.c == 1, "transpose", "needs a (1,R,C) matrix, got " + to_string(s));
  Tensor out(Shape{1, s.w, s.h});
  for (int r = 0; r < s.h; ++r)
    for (int c = 0; c < s.w; ++c) out.at(0, c, r) = a.value().at(0, r, c);
  const int ia = a.id();
  return a.tape().record("transpose", std::move(out), {a}, [ia](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& ga = t.grad_buffer(ia);
    for (int r = 0; r < ga.height(); ++r)
      for (int c = 0; c < ga.width(); ++c) ga.at(0, r, c) += go.at(0, c, r);
  });
}

Var to_tokens(Var x) {
  const Shape s = x.shape();
  const int n = s.h * s.w;
  Tensor out(Shape{1, n, s.c});
  const Tensor& xv = x.value();
  for (int c = 0; c < s.c; ++c)
    for (int p = 0; p < n; ++p) out[static_cast<std::size_t>(p) * s.c + c] = xv[static_cast<std::size_t>(c) * n + p];
  const int ix = x.id();
  return x.tape().record("to_tokens", std::move(out), {x}, [ix](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    const int n = go.height(), ch = go.width();
    for (int c = 0; c < ch; ++c)
      for (int p = 0; p < n; ++p) gx[static_cast<std::size_t>(c) * n + p] += go[static_cast<std::size_t>(p) * ch + c];
  });
}

Var from_tokens(Var tk, int h, int w) {
  const Shape s = tk.shape();
  require(s.c == 1 && s.h == h * w, "from_tokens",
          to_string(s) + " into " + std::to_string(h) + "x" + std::to_string(w));
  const int n = s.h, ch = s.w;
  Tensor out(Shape{ch, h, w});
  const Tensor& tv = tk.value();
  for (int c = 0; c < ch; ++c)
    for (int p = 0; p < n; ++p) out[static_cast<std::size_t>(c) * n + p] = tv[static_cast<std::size_t>(p) * ch + c];
  const int it = tk.id();
  return tk.tape().record("from_tokens", std::move(out), {tk}, [it](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gt = t.grad_buffer(it);
    const int ch = go.channels();
    const int n = static_cast<int>(go.shape().plane());
    for (int c = 0; c < ch; ++c)
      for (int p = 0; p < n; ++p) gt[static_cast<std::size_t>(p) * ch + c] += go[static_cast<std::size_t>(c) * n + p];
  });
}

Var reshape(Var x, Shape shape) {
  require(shape.numel() == x.shape().numel(), "reshape",
          to_string(x.shape()) + " into " + to_string(shape));
  const int ix = x.id();
  return x.tape().record("reshape", x.value().reshaped(shape), {x}, [ix](Tape& t, int self) {
    Tensor& gx = t.grad_buffer(ix);
    const Tensor& go = t.grad(self);
    for (std::size_t i = 0; i < go.size(); ++i) gx[i] += go[i];
  });
}

namespace {

// Calls fn(offset, stride, length) for every softmax slice.
template <typename Fn>
void for_each_slice(const Shape& s, Axis axis, Fn fn) {
  if (axis == Axis::kWidth) {
    for (int c = 0; c < s.c; ++c)
      for (int y = 0; y < s.h; ++y)
        fn((static_cast<std::size_t>(c) * s.h + y) * s.w, std::size_t{1}, s.w);
  } else {
    for (std::size_t p = 0; p < s.plane(); ++p) fn(p, s.plane(), s.c);
  }
}

}  // namespace

Var softmax(Var x, Axis axis) {
  const Shape s = x.shape();
  Tensor out(s);
  const Tensor& xv = x.value();
  for_each_slice(s, axis, [&](std::size_t off, std::size_t stride, int len) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < len; ++i) m = std::max(m, xv[off + i * stride]);
    double z = 0.0;
    for (int i = 0; i < len; ++i) {
      const double e = std::exp(xv[off + i * stride] - m);
      out[off + i * stride] = e;
      z += e;
    }
    for (int i = 0; i < len; ++i) out[off + i * stride] /= z;
  });
  const int ix = x.id();
  return x.tape().record("softmax", std::move(out), {x}, [ix, axis](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    const Tensor& y = t.value(self);
    Tensor& gx = t.grad_buffer(ix);
    for_each_slice(go.shape(), axis, [&](std::size_t off, std::size_t stride, int len) {
      double dot = 0.0;
      for (int i = 0; i < len; ++i) dot += go[off + i * stride] * y[off + i * stride];
      for (int i = 0; i < len; ++i) {
        const std::size_t j = off + i * stride;
        gx[j] += y[j] * (go[j] - dot);
      }
    });
  });
}

Var global_avg_pool(Var x) {
  const Shape s = x.shape();
  require(s.numel() > 0, "global_avg_pool", "empty input");
  Tensor out(Shape{s.c, 1, 1});
  const double inv = 1.0 / static_cast<double>(s.plane());
  for (int c = 0; c < s.c; ++c) {
    double acc = 0.0;
    for (double v : x.value().channel(c)) acc += v;
    out[c] = acc * inv;
  }
  const int ix = x.id();
  return x.tape().record("global_avg_pool", std::move(out), {x}, [ix, inv](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    for (int c = 0; c < gx.channels(); ++c)
      for (double& g : gx.channel(c)) g += go[c] * inv;
  });
}

Var channel_mean(Var x) {
  const Shape s = x.shape();
  Tensor out(Shape{1, s.h, s.w});
  const double inv = 1.0 / s.c;
  const std::size_t plane = s.plane();
  for (int c = 0; c < s.c; ++c)
    for (std::size_t p = 0; p < plane; ++p) out[p] += x.value()[c * plane + p];
  for (double& v : out.data()) v *= inv;
  const int ix = x.id();
  return x.tape().record("channel_mean", std::move(out), {x}, [ix, inv](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    const std::size_t plane = go.size();
    for (int c = 0; c < gx.channels(); ++c)
      for (std::size_t p = 0; p < plane; ++p) gx[c * plane + p] += go[p] * inv;
  });
}

Var channel_max(Var x) {
  const Shape s = x.shape();
  const std::size_t plane = s.plane();
  Tensor out(Shape{1, s.h, s.w});
  auto arg = std::make_shared<std::vector<int>>(plane, 0);
  const Tensor& xv = x.value();
  for (std::size_t p = 0; p < plane; ++p) {
    double best = xv[p];
    int bi = 0;
    for (int c = 1; c < s.c; ++c)
      if (xv[c * plane + p] > best) {
        best = xv[c * plane + p];
        bi = c;
      }
    out[p] = best;
    (*arg)[p] = bi;
  }
  const int ix = x.id();
  return x.tape().record("channel_max", std::move(out), {x}, [ix, arg](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    const std::size_t plane = go.size();
    for (std::size_t p = 0; p < plane; ++p) gx[(*arg)[p] * plane + p] += go[p];
  });
}

Var avg_pool(Var x, int k) {
  require(k > 0 && k % 2 == 1, "avg_pool", "kernel must be odd");
  require(x.shape().numel() > 0, "avg_pool", "empty input");
  Tensor out = kernels::box_filter_replicate(x.value(), k);
  const int ix = x.id();
  return x.tape().record("avg_pool", std::move(out), {x}, [ix, k](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    const Shape s = go.shape();
    const int r = k / 2;
    const double norm = 1.0 / (static_cast<double>(k) * k);
    for (int c = 0; c < s.c; ++c)
      for (int y = 0; y < s.h; ++y)
        for (int xx = 0; xx < s.w; ++xx) {
          const double g = go.at(c, y, xx) * norm;
          for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx)
              gx.at(c, clampi(y + dy, 0, s.h - 1), clampi(xx + dx, 0, s.w - 1)) += g;
        }
  });
}

Var max_pool(Var x, int k) {
  require(k > 0 && k % 2 == 1, "max_pool", "kernel must be odd");
  const Shape s = x.shape();
  require(s.numel() > 0, "max_pool", "empty input");
  const int r = k / 2;
  Tensor out(s);
  auto arg = std::make_shared<std::vector<std::size_t>>(s.numel());
  const Tensor& xv = x.value();
  for (int c = 0; c < s.c; ++c)
    for (int y = 0; y < s.h; ++y)
      for (int xx = 0; xx < s.w; ++xx) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        for (int dy = -r; dy <= r; ++dy)
          for (int dx = -r; dx <= r; ++dx) {
            const std::size_t j = (static_cast<std::size_t>(c) * s.h + clampi(y + dy, 0, s.h - 1)) * s.w +
                                  clampi(xx + dx, 0, s.w - 1);
            if (xv[j] > best) {
              best = xv[j];
              bi = j;
            }
          }
        const std::size_t o = (static_cast<std::size_t>(c) * s.h + y) * s.w + xx;
        out[o] = best;
        (*arg)[o] = bi;
      }
  const int ix = x.id();
  return x.tape().record("max_pool", std::move(out), {x}, [ix, arg](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    for (std::size_t o = 0; o < go.size(); ++o) gx[(*arg)[o]] += go[o];
  });
}

Var resize_bilinear(Var x, int h, int w) {
  require(h > 0 && w > 0, "resize_bilinear", "non-positive target size");
  const Shape s = x.shape();
  Tensor out = kernels::resize_bilinear(x.value(), h, w);
  const int ix = x.id();
  return x.tape().record("resize_bilinear", std::move(out), {x}, [ix, s, h, w](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    const BilinearAxis ay = bilinear_axis(s.h, h);
    const BilinearAxis ax = bilinear_axis(s.w, w);
    for (int c = 0; c < s.c; ++c)
      for (int y = 0; y < h; ++y) {
        const double ly = ay.frac[y];
        for (int xx = 0; xx < w; ++xx) {
          const double lx = ax.frac[xx];
          const double g = go.at(c, y, xx);
          gx.at(c, ay.i0[y], ax.i0[xx]) += g * (1 - ly) * (1 - lx);
          gx.at(c, ay.i0[y], ax.i1[xx]) += g * (1 - ly) * lx;
          gx.at(c, ay.i1[y], ax.i0[xx]) += g * ly * (1 - lx);
          gx.at(c, ay.i1[y], ax.i1[xx]) += g * ly * lx;
        }
      }
  });
}

Var upsample2(Var x) { return resize_bilinear(x, 2 * x.shape().h, 2 * x.shape().w); }

Var downsample2(Var x) {
  const Shape s = x.shape();
  require(s.h % 2 == 0 && s.w % 2 == 0, "downsample2", "odd spatial dims " + to_string(s));
  Tensor out(Shape{s.c, s.h / 2, s.w / 2});
  const Tensor& xv = x.value();
  for (int c = 0; c < s.c; ++c)
    for (int y = 0; y < s.h / 2; ++y)
      for (int xx = 0; xx < s.w / 2; ++xx)
        out.at(c, y, xx) = 0.25 * (xv.at(c, 2 * y, 2 * xx) + xv.at(c, 2 * y, 2 * xx + 1) +
                                   xv.at(c, 2 * y + 1, 2 * xx) + xv.at(c, 2 * y + 1, 2 * xx + 1));
  const int ix = x.id();
  return x.tape().record("downsample2", std::move(out), {x}, [ix](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    for (int c = 0; c < go.channels(); ++c)
      for (int y = 0; y < go.height(); ++y)
        for (int xx = 0; xx < go.width(); ++xx) {
          const double g = 0.25 * go.at(c, y, xx);
          gx.at(c, 2 * y, 2 * xx) += g;
          gx.at(c, 2 * y, 2 * xx + 1) += g;
          gx.at(c, 2 * y + 1, 2 * xx) += g;
          gx.at(c, 2 * y + 1, 2 * xx + 1) += g;
        }
  });
}

Var pad_to(Var x, int h, int w) {
  const Shape s = x.shape();
  require(h >= s.h && w >= s.w, "pad_to", to_string(s) + " to " + std::to_string(h) + "x" + std::to_string(w));
  Tensor out(Shape{s.c, h, w});
  for (int c = 0; c < s.c; ++c)
    for (int y = 0; y < s.h; ++y)
      for (int xx = 0; xx < s.w; ++xx) out.at(c, y, xx) = x.value().at(c, y, xx);
  const int ix = x.id();
  return x.tape().record("pad_to", std::move(out), {x}, [ix](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    for (int c = 0; c < gx.channels(); ++c)
      for (int y = 0; y < gx.height(); ++y)
        for (int xx = 0; xx < gx.width(); ++xx) gx.at(c, y, xx) += go.at(c, y, xx);
  });
}

Var crop(Var x, int h, int w) {
  const Shape s = x.shape();
  require(h <= s.h && w <= s.w && h > 0 && w > 0, "crop",
          to_string(s) + " to " + std::to_string(h) + "x" + std::to_string(w));
  Tensor out(Shape{s.c, h, w});
  for (int c = 0; c < s.c; ++c)
    for (int y = 0; y < h; ++y)
      for (int xx = 0; xx < w; ++xx) out.at(c, y, xx) = x.value().at(c, y, xx);
  const int ix = x.id();
  return x.tape().record("crop", std::move(out), {x}, [ix](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    for (int c = 0; c < go.channels(); ++c)
      for (int y = 0; y < go.height(); ++y)
        for (int xx = 0; xx < go.width(); ++xx) gx.at(c, y, xx) += go.at(c, y, xx);
  });
}

Var space_to_depth(Var x, int block) {
  const Shape s = x.shape();
  require(block > 0 && s.h % block == 0 && s.w % block == 0, "space_to_depth",
          to_string(s) + " by block " + std::to_string(block));
  const int oh = s.h / block, ow = s.w / block;
  Tensor out(Shape{s.c * block * block, oh, ow});
  auto index = [block](int c, int dy, int dx) { return (c * block + dy) * block + dx; };
  for (int c = 0; c < s.c; ++c)
    for (int dy = 0; dy < block; ++dy)
      for (int dx = 0; dx < block; ++dx)
        for (int y = 0; y < oh; ++y)
          for (int xx = 0; xx < ow; ++xx)
            out.at(index(c, dy, dx), y, xx) = x.value().at(c, y * block + dy, xx * block + dx);
  const int ix = x.id();
  return x.tape().record("space_to_depth", std::move(out), {x}, [ix, block, index](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    for (int c = 0; c < gx.channels(); ++c)
      for (int dy = 0; dy < block; ++dy)
        for (int dx = 0; dx < block; ++dx)
          for (int y = 0; y < go.height(); ++y)
            for (int xx = 0; xx < go.width(); ++xx)
              gx.at(c, y * block + dy, xx * block + dx) += go.at(index(c, dy, dx), y, xx);
  });
}

Var concat_channels(std::span<const Var> xs) {
  require(!xs.empty(), "concat_channels", "no inputs");
  const Shape s0 = xs[0].shape();
  int total = 0;
  for (const Var& v : xs) {
    require(v.shape().h == s0.h && v.shape().w == s0.w, "concat_channels",
            to_string(v.shape()) + " vs " + to_string(s0));
    total += v.shape().c;
  }
  Tensor out(Shape{total, s0.h, s0.w});
  std::vector<int> ids;
  std::size_t off = 0;
  for (const Var& v : xs) {
    std::copy(v.value().data().begin(), v.value().data().end(), out.data().begin() + off);
    off += v.value().size();
    ids.push_back(v.id());
  }
  return xs[0].tape().record(
      "concat_channels", std::move(out), std::vector<Var>(xs.begin(), xs.end()),
      [ids](Tape& t, int self) {
        const Tensor& go = t.grad(self);
        std::size_t off = 0;
        for (int id : ids) {
          const std::size_t n = t.value(id).size();
          if (t.requires_grad(id)) {
            Tensor& g = t.grad_buffer(id);
            for (std::size_t i = 0; i < n; ++i) g[i] += go[off + i];
          }
          off += n;
        }
      });
}

Var slice_channels(Var x, int begin, int count) {
  const Shape s = x.shape();
  require(begin >= 0 && count > 0 && begin + count <= s.c, "slice_channels",
          "[" + std::to_string(begin) + "," + std::to_string(begin + count) + ") of " + to_string(s));
  const std::size_t plane = s.plane();
  Tensor out(Shape{count, s.h, s.w});
  std::copy_n(x.value().data().begin() + begin * plane, count * plane, out.data().begin());
  const int ix = x.id();
  return x.tape().record("slice_channels", std::move(out), {x}, [ix, begin, plane](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    for (std::size_t i = 0; i < go.size(); ++i) gx[begin * plane + i] += go[i];
  });
}

Var sum(Var x) {
  const int ix = x.id();
  return x.tape().record("sum", Tensor::scalar(sfg::sum(x.value())), {x}, [ix](Tape& t, int self) {
    const double g = t.grad(self)[0];
    for (double& v : t.grad_buffer(ix).data()) v += g;
  });
}

Var mean(Var x) {
  const int ix = x.id();
  const double inv = 1.0 / static_cast<double>(x.value().size());
  return x.tape().record("mean", Tensor::scalar(sfg::sum(x.value()) * inv), {x}, [ix, inv](Tape& t, int self) {
    const double g = t.grad(self)[0] * inv;
    for (double& v : t.grad_buffer(ix).data()) v += g;
  });
}

}  // namespace ops
}  // namespace sfg
