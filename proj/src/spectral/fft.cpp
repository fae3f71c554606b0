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

#include "sfg/spectral/fft.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "sfg/core/errors.hpp"

namespace sfg::spectral {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace {

void require_pow2(int h, int w) {
  if (!is_power_of_two(h) || !is_power_of_two(w)) {
    throw ShapeError("FFT needs power-of-two dims, got " + std::to_string(h) + "x" +
                     std::to_string(w) + "; pad the input to " +
                     std::to_string(next_power_of_two(h)) + "x" +
                     std::to_string(next_power_of_two(w)) + " first");
  }
}

struct AuditState {
  std::mutex mu;
  std::atomic<bool> enabled{false};
  double max_rel = 0.0;
  std::uint64_t calls = 0;
};

AuditState& audit() {
  static AuditState s;
  return s;
}

}  // namespace

void fft_inplace(std::span<Complex> a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw ShapeError("FFT length " + std::to_string(n) + " is not a power of two");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<Complex> twiddle;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    twiddle.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(len);
      twiddle[k] = Complex(std::cos(ang), std::sin(ang));
    }
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[start + k];
        const Complex v = a[start + k + half] * twiddle[k];
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

void fft2d_inplace(std::span<Complex> plane, int h, int w, bool inverse) {
  require_pow2(h, w);
  for (int r = 0; r < h; ++r) fft_inplace(plane.subspan(static_cast<std::size_t>(r) * w, w), inverse);
  std::vector<Complex> col(h);
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) col[r] = plane[static_cast<std::size_t>(r) * w + c];
    fft_inplace(col, inverse);
    for (int r = 0; r < h; ++r) plane[static_cast<std::size_t>(r) * w + c] = col[r];
  }
}

std::vector<Complex> forward_plane(std::span<const double> plane, int h, int w) {
  require_pow2(h, w);
  std::vector<Complex> z(plane.begin(), plane.end());
  fft2d_inplace(z, h, w, false);
  if (audit().enabled.load(std::memory_order_relaxed)) {
    double es = 0.0, ef = 0.0;
    for (double v : plane) es += v * v;
    for (const Complex& c : z) ef += std::norm(c);
    ParsevalAudit::record(es, ef / (static_cast<double>(h) * w));
  }
  return z;
}

SpectralRep fft2d(const Tensor& x) {
  const Shape s = x.shape();
  require_pow2(s.h, s.w);
  SpectralRep rep{Tensor(s), Tensor(s)};
  for (int c = 0; c < s.c; ++c) {
    const std::vector<Complex> z = forward_plane(x.channel(c), s.h, s.w);
    auto mag = rep.magnitude.channel(c);
    auto ph = rep.phase.channel(c);
    for (std::size_t i = 0; i < z.size(); ++i) {
      mag[i] = std::abs(z[i]);
      if (mag[i] == 0.0) {
        ph[i] = 0.0;
        continue;
      }
      double p = std::arg(z[i]);
      if (p <= -std::numbers::pi) p = std::numbers::pi;
      ph[i] = p;
    }
  }
  return rep;
}

Tensor ifft2d(const SpectralRep& rep, double* max_imag) {
  const Shape s = rep.magnitude.shape();
  if (!(rep.phase.shape() == s)) {
    throw ShapeError("magnitude " + to_string(s) + " vs phase " + to_string(rep.phase.shape()));
  }
  require_pow2(s.h, s.w);
  const double norm = 1.0 / (static_cast<double>(s.h) * s.w);
  Tensor out(s);
  double worst = 0.0;
  std::vector<Complex> z(s.plane());
  for (int c = 0; c < s.c; ++c) {
    auto mag = rep.magnitude.channel(c);
    auto ph = rep.phase.channel(c);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::polar(mag[i], ph[i]);
    fft2d_inplace(z, s.h, s.w, true);
    auto dst = out.channel(c);
    for (std::size_t i = 0; i < z.size(); ++i) {
      dst[i] = z[i].real() * norm;
      worst = std::max(worst, std::abs(z[i].imag() * norm));
    }
  }
  if (worst > 1e-6) {
    throw SymmetryError("imaginary residue " + std::to_string(worst) +
                        " after inverse FFT; spectrum is not Hermitian-symmetric");
  }
  if (max_imag != nullptr) *max_imag = worst;
  return out;
}

void ParsevalAudit::enable(bool on) { audit().enabled.store(on); }

void ParsevalAudit::reset() {
  std::lock_guard<std::mutex> lock(audit().mu);
  audit().max_rel = 0.0;
  audit().calls = 0;
}

double ParsevalAudit::max_relative_error() {
  std::lock_guard<std::mutex> lock(audit().mu);
  return audit().max_rel;
}

std::uint64_t ParsevalAudit::calls() {
  std::lock_guard<std::mutex> lock(audit().mu);
  return audit().calls;
}

void ParsevalAudit::record(double energy_space, double energy_freq) {
  const double denom = std::max(energy_space, energy_freq);
  const double rel = denom > 0.0 ? std::abs(energy_space - energy_freq) / denom : 0.0;
  std::lock_guard<std::mutex> lock(audit().mu);
  audit().max_rel = std::max(audit().max_rel, rel);
  ++audit().calls;
}

}  // namespace sfg::spectral
