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

#include "sfg/core/tensor.hpp"

namespace sfg::spectral {

/// Radial partition of the frequency plane. Band i covers normalized radius
/// [edges[i-1], edges[i]); the last band is closed at 1.
struct BandSpec {
  std::vector<double> edges{1.0 / 3.0, 2.0 / 3.0};

  int band_count() const { return static_cast<int>(edges.size()) + 1; }
  /// Throws ConfigError unless edges are strictly ascending inside (0, 1).
  void validate() const;

  static BandSpec single() { return BandSpec{{}}; }
  /// `count` equal-width bands.
  static BandSpec uniform(int count);
  /// Parses "a,b,c"; an empty string gives a single band.
  static BandSpec parse(const std::string& text);
  std::string to_string() const;
};

/// sqrt((2u'/H)^2 + (2v'/W)^2) / sqrt(2) with u', v' the signed frequencies
/// of bin (u, v). 0 at DC, 1 at the Nyquist corner.
double normalized_radius(int u, int v, int h, int w);

int band_index(double radius, const BandSpec& spec);

/// One (1,H,W) 0/1 mask per band; they sum to one at every bin.
std::vector<Tensor> make_band_masks(const BandSpec& spec, int h, int w);

}  // namespace sfg::spectral
