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

#include "sfg/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sfg/core/errors.hpp"

namespace sfg::metrics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_pair(const Tensor& pred, const Tensor& gt, const char* what) {
  if (!(pred.shape() == gt.shape()) || pred.shape().c != 1 || pred.empty()) {
    throw ShapeError(std::string(what) + ": prediction " + to_string(pred.shape()) +
                     " vs mask " + to_string(gt.shape()) + " (need matching (1,H,W))");
  }
}

std::vector<char> binarize(const Tensor& gt) {
  std::vector<char> b(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) b[i] = gt[i] >= 0.5;
  return b;
}

double s_object(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return 2.0 * m / (m * m + 1.0 + sd + kEps);
}

// SSIM-style score of one block [y0,y1) x [x0,x1).
double block_ssim(const Tensor& pred, const std::vector<char>& g, int w, int y0, int y1, int x0,
                  int x1) {
  const int n = (y1 - y0) * (x1 - x0);
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      mx += pred[y * w + x];
      my += g[y * w + x];
    }
  mx /= n;
  my /= n;
  double sx = 0.0, sy = 0.0, sxy = 0.0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      const double dp = pred[y * w + x] - mx, dg = g[y * w + x] - my;
      sx += dp * dp;
      sy += dg * dg;
      sxy += dp * dg;
    }
  sx /= n - 1;
  sy /= n - 1;
  sxy /= n - 1;
  const double a = 4.0 * mx * my * sxy;
  const double b = (mx * mx + my * my) * (sx + sy);
  if (a != 0.0) return a / (b + kEps);
  return b == 0.0 ? 1.0 : 0.0;
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double mae(const Tensor& pred, const Tensor& gt) {
  require_pair(pred, gt, "mae");
  const std::vector<char> g = binarize(gt);
  CompensatedSum s;
  for (std::size_t i = 0; i < pred.size(); ++i) s.add(std::abs(pred[i] - g[i]));
  return s.value() / static_cast<double>(pred.size());
}

double s_measure(const Tensor& pred, const Tensor& gt) {
  require_pair(pred, gt, "s_measure");
  const std::vector<char> g = binarize(gt);
  const int h = pred.shape().h, w = pred.shape().w;
  const double n = static_cast<double>(pred.size());
  std::size_t fg_count = 0;
  for (char v : g) fg_count += v;
  const double u = static_cast<double>(fg_count) / n;
  if (fg_count == 0) return std::clamp(1.0 - mean(pred), 0.0, 1.0);
  if (fg_count == pred.size()) return std::clamp(mean(pred), 0.0, 1.0);

  std::vector<double> fg, bg;
  double row_sum = 0.0, col_sum = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (g[i]) {
        fg.push_back(pred[i]);
        row_sum += y;
        col_sum += x;
      } else {
        bg.push_back(1.0 - pred[i]);
      }
    }
  const double object = u * s_object(fg) + (1.0 - u) * s_object(bg);

  // Centroid split: round half to even, then shift by one as in the
  // reference formulation.
  const int cy = static_cast<int>(std::nearbyint(row_sum / fg_count)) + 1;
  const int cx = static_cast<int>(std::nearbyint(col_sum / fg_count)) + 1;
  const double w1 = static_cast<double>(cx) * cy / n;
  const double w2 = static_cast<double>(cy) * (w - cx) / n;
  const double w3 = static_cast<double>(h - cy) * cx / n;
  const double w4 = 1.0 - w1 - w2 - w3;
  const double region = w1 * block_ssim(pred, g, w, 0, cy, 0, cx) +
                        w2 * block_ssim(pred, g, w, 0, cy, cx, w) +
                        w3 * block_ssim(pred, g, w, cy, h, 0, cx) +
                        w4 * block_ssim(pred, g, w, cy, h, cx, w);
  return std::clamp(0.5 * object + 0.5 * region, 0.0, 1.0);
}

double e_measure(const Tensor& pred, const Tensor& gt) {
  require_pair(pred, gt, "e_measure");
  const std::vector<char> g = binarize(gt);
  const std::size_t n = pred.size();
  std::size_t fg_count = 0;
  for (char v : g) fg_count += v;
  const double mg = static_cast<double>(fg_count) / static_cast<double>(n);

  CompensatedSum total;
  std::vector<char> fm(n);
  for (int k = 0; k < 256; ++k) {
    const double theta = k / 256.0;
    std::size_t on = 0;
    for (std::size_t i = 0; i < n; ++i) on += (fm[i] = pred[i] > theta);
    CompensatedSum s;
    if (fg_count == 0) {
      s.add(static_cast<double>(n - on));
    } else if (fg_count == n) {
      s.add(static_cast<double>(on));
    } else {
      const double mf = static_cast<double>(on) / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double af = fm[i] - mf, ag = g[i] - mg;
        const double align = 2.0 * ag * af / (ag * ag + af * af + kEps);
        s.add((align + 1.0) * (align + 1.0) / 4.0);
      }
    }
    total.add(s.value() / static_cast<double>(n));
  }
  return total.value() / 256.0;
}

NearestForeground nearest_foreground(const Tensor& gt) {
  const std::vector<char> g = binarize(gt);
  const int h = gt.shape().h, w = gt.shape().w;
  NearestForeground nf{std::vector<double>(g.size(), 0.0), std::vector<int>(g.size(), -1)};
  const int limit = std::max(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int i = y * w + x;
      if (g[i]) {
        nf.index[i] = i;
        continue;
      }
      // Search square rings outwards; a pixel on ring r is at least r away.
      long best = -1;
      int best_idx = -1;
      for (int r = 1; r <= limit; ++r) {
        if (best >= 0 && static_cast<long>(r) * r > best) break;
        for (int yy = std::max(0, y - r); yy <= std::min(h - 1, y + r); ++yy) {
          const bool edge_row = yy == y - r || yy == y + r;
          const int step = edge_row ? 1 : 2 * r;
          for (int xx = x - r; xx <= x + r; xx += step) {
            if (xx < 0 || xx >= w || !g[yy * w + xx]) continue;
            const long d2 = static_cast<long>(yy - y) * (yy - y) + static_cast<long>(xx - x) * (xx - x);
            const int idx = yy * w + xx;
            if (best < 0 || d2 < best || (d2 == best && idx < best_idx)) {
              best = d2;
              best_idx = idx;
            }
          }
        }
      }
      if (best_idx < 0) throw ContractError("nearest_foreground: mask has no foreground");
      nf.distance[i] = std::sqrt(static_cast<double>(best));
      nf.index[i] = best_idx;
    }
  return nf;
}

double weighted_f_measure(const Tensor& pred, const Tensor& gt) {
  require_pair(pred, gt, "weighted_f_measure");
  const std::vector<char> g = binarize(gt);
  const int h = pred.shape().h, w = pred.shape().w;
  const std::size_t n = pred.size();
  std::size_t fg_count = 0;
  for (char v : g) fg_count += v;
  if (fg_count == 0) {
    for (double v : pred.data())
      if (v != 0.0) return 0.0;
    return 1.0;
  }

  std::vector<double> e(n), et(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = std::abs(pred[i] - g[i]);
  const NearestForeground nf = nearest_foreground(gt);
  for (std::size_t i = 0; i < n; ++i) et[i] = e[nf.index[i]];

  double kernel[7][7];
  double kmax = 0.0, ksum = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      kernel[i][j] = std::exp(-((i - 3) * (i - 3) + (j - 3) * (j - 3)) / (2.0 * 25.0));
      kmax = std::max(kmax, kernel[i][j]);
    }
  for (auto& row : kernel)
    for (double& v : row) {
      if (v < kEps * kmax) v = 0.0;
      ksum += v;
    }
  for (auto& row : kernel)
    for (double& v : row) v /= ksum;

  CompensatedSum ew_fg, ew_bg;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (g[i]) {
        double ea = 0.0;
        for (int dy = -3; dy <= 3; ++dy)
          for (int dx = -3; dx <= 3; ++dx) {
            const int yy = y + dy, xx = x + dx;
            if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
            ea += kernel[dy + 3][dx + 3] * et[static_cast<std::size_t>(yy) * w + xx];
          }
        ew_fg.add(std::min(ea, e[i]));
      } else {
        const double b = 2.0 - std::exp(std::log(0.5) / 5.0 * nf.distance[i]);
        ew_bg.add(e[i] * b);
      }
    }
  const double tpw = static_cast<double>(fg_count) - ew_fg.value();
  const double fpw = ew_bg.value();
  const double recall = 1.0 - ew_fg.value() / static_cast<double>(fg_count);
  const double precision = tpw / (tpw + fpw + kEps);
  return std::clamp(2.0 * recall * precision / (recall + precision + kEps), 0.0, 1.0);
}

MetricsReport evaluate_image(const Tensor& pred, const Tensor& gt) {
  MetricsReport r;
  r.s_measure = s_measure(pred, gt);
  r.f_beta_w = weighted_f_measure(pred, gt);
  r.mae = mae(pred, gt);
  r.e_measure = e_measure(pred, gt);
  r.n_images = 1;
  return r;
}

}  // namespace sfg::metrics
