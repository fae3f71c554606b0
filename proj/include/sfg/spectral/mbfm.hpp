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

#include <string>
#include <vector>

#include "sfg/core/layers.hpp"
#include "sfg/spectral/bands.hpp"

namespace sfg::spectral {

/// Per-channel band split: for each band i, X_i = F^-1(mask_i * M * e^{jP})
/// with the phase P of the unmasked spectrum. Returns B tensors shaped like x.
std::vector<Tensor> decompose_bands(const Tensor& x, const BandSpec& spec,
                                    double* max_imag = nullptr);

/// Differentiable form of `decompose_bands`; output is the band-major
/// concatenation [X_0 | X_1 | ... ] with B*C channels.
Var band_decompose(Var x, const BandSpec& spec);

/// Multi-band Fourier module: split into bands, project the B*C band
/// channels back to C with `<prefix>.proj`, add the input back.
Var mbfm_forward(Context& ctx, Var x, const BandSpec& spec,
                 const std::string& prefix = "mbfm");

}  // namespace sfg::spectral
