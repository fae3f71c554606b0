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

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "sfg/core/tensor.hpp"

namespace sfg::spectral {

using Complex = std::complex<double>;

bool is_power_of_two(int n);
int next_power_of_two(int n);

/// In-place radix-2 Cooley-Tukey transform, unnormalized in both directions
/// (forward uses e^{-j...}, inverse e^{+j...}). Length must be a power of two.
void fft_inplace(std::span<Complex> data, bool inverse);

/// Unnormalized 2D transform of one h x w plane in row-major order.
void fft2d_inplace(std::span<Complex> plane, int h, int w, bool inverse);

/// Polar form of a per-channel 2D spectrum. Magnitude >= 0, phase in
/// (-pi, pi]; bins with zero magnitude carry phase 0.
struct SpectralRep {
  Tensor magnitude;
  Tensor phase;
};

/// Per-channel forward transform. DC bin holds H*W*mean (no normalization on
/// the forward side). H and W must be powers of two.
SpectralRep fft2d(const Tensor& x);

/// Inverse of `fft2d` (applies the 1/(H*W) factor). Throws SymmetryError if
/// the imaginary residue exceeds 1e-6; the residue is discarded otherwise and
/// reported through `max_imag` when given.
Tensor ifft2d(const SpectralRep& s, double* max_imag = nullptr);

/// Complex spectrum of one real plane (audited like `fft2d`).
std::vector<Complex> forward_plane(std::span<const double> plane, int h, int w);

/// Records the relative Parseval error of every forward transform while
/// enabled. Thread-safe.
class ParsevalAudit {
 public:
  static void enable(bool on);
  static void reset();
  static double max_relative_error();
  static std::uint64_t calls();
  static void record(double energy_space, double energy_freq);
};

}  // namespace sfg::spectral
