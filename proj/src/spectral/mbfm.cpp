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

#include "sfg/spectral/mbfm.hpp"

#include <algorithm>
#include <memory>

#include "sfg/core/errors.hpp"
#include "sfg/spectral/fft.hpp"

namespace sfg::spectral {

std::vector<Tensor> decompose_bands(const Tensor& x, const BandSpec& spec,
                                    double* max_imag) {
  const Shape s = x.shape();
  const std::vector<Tensor> masks = make_band_masks(spec, s.h, s.w);
  const SpectralRep full = fft2d(x);
  std::vector<Tensor> bands;
  bands.reserve(masks.size());
  double worst = 0.0;
  for (const Tensor& mask : masks) {
    SpectralRep band{full.magnitude, full.phase};
    for (int c = 0; c < s.c; ++c) {
      auto m = band.magnitude.channel(c);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] *= mask[i];
    }
    double imag = 0.0;
    bands.push_back(ifft2d(band, &imag));
    worst = std::max(worst, imag);
  }
  if (max_imag != nullptr) *max_imag = worst;
  return bands;
}

Var band_decompose(Var x, const BandSpec& spec) {
  const Shape s = x.shape();
  const std::vector<Tensor> bands = decompose_bands(x.value(), spec);
  const int nb = static_cast<int>(bands.size());
  Tensor out(Shape{nb * s.c, s.h, s.w});
  for (int b = 0; b < nb; ++b)
    std::copy(bands[b].data().begin(), bands[b].data().end(),
              out.data().begin() + static_cast<std::ptrdiff_t>(b) * s.numel());

  auto masks = std::make_shared<std::vector<Tensor>>(make_band_masks(spec, s.h, s.w));
  const int ix = x.id();
  // Each band operator F^-1 diag(mask) F is real and self-adjoint for a
  // radially symmetric mask, so the adjoint reuses the same filter.
  return x.tape().record("band_decompose", std::move(out), {x}, [ix, s, nb, masks](Tape& t, int self) {
    const Tensor& go = t.grad(self);
    Tensor& gx = t.grad_buffer(ix);
    const std::size_t plane = s.plane();
    const double norm = 1.0 / static_cast<double>(plane);
    std::vector<Complex> acc(plane);
    for (int c = 0; c < s.c; ++c) {
      std::fill(acc.begin(), acc.end(), Complex(0.0, 0.0));
      for (int b = 0; b < nb; ++b) {
        const std::size_t off = static_cast<std::size_t>(b) * s.numel() + c * plane;
        const std::vector<Complex> z =
            forward_plane(go.data().subspan(off, plane), s.h, s.w);
        const Tensor& mask = (*masks)[b];
        for (std::size_t i = 0; i < plane; ++i) acc[i] += mask[i] * z[i];
      }
      fft2d_inplace(acc, s.h, s.w, true);
      for (std::size_t i = 0; i < plane; ++i) gx[c * plane + i] += acc[i].real() * norm;
    }
  });
}

Var mbfm_forward(Context& ctx, Var x, const BandSpec& spec, const std::string& prefix) {
  const Var bands = band_decompose(x, spec);
  const Var fused = ctx.linear_project(bands, prefix + ".proj", x.shape().c);
  return ops::add(fused, x);
}

}  // namespace sfg::spectral
