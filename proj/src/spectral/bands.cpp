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

#include "sfg/spectral/bands.hpp"

#include <cmath>
#include <sstream>

#include "sfg/core/errors.hpp"

namespace sfg::spectral {

void BandSpec::validate() const {
  double prev = 0.0;
  for (double e : edges) {
    if (!(e > prev) || !(e < 1.0)) {
      throw ConfigError("band edges must be strictly ascending inside (0,1): " + to_string());
    }
    prev = e;
  }
}

BandSpec BandSpec::uniform(int count) {
  if (count < 1) throw ConfigError("band count must be positive");
  BandSpec s{{}};
  for (int i = 1; i < count; ++i) s.edges.push_back(static_cast<double>(i) / count);
  return s;
}

BandSpec BandSpec::parse(const std::string& text) {
  BandSpec s{{}};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      s.edges.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad band edge '" + item + "'");
    }
  }
  s.validate();
  return s;
}

std::string BandSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < edges.size(); ++i) os << (i ? "," : "") << edges[i];
  return os.str();
}

double normalized_radius(int u, int v, int h, int w) {
  const int su = u < (h + 1) / 2 ? u : u - h;
  const int sv = v < (w + 1) / 2 ? v : v - w;
  const double fu = 2.0 * su / h;
  const double fv = 2.0 * sv / w;
  // Halving before the root keeps dyadic boundary bins exact.
  return std::sqrt((fu * fu + fv * fv) * 0.5);
}

int band_index(double radius, const BandSpec& spec) {
  for (std::size_t i = 0; i < spec.edges.size(); ++i)
    if (radius < spec.edges[i]) return static_cast<int>(i);
  return static_cast<int>(spec.edges.size());
}

std::vector<Tensor> make_band_masks(const BandSpec& spec, int h, int w) {
  spec.validate();
  std::vector<Tensor> masks(spec.band_count(), Tensor(Shape{1, h, w}));
  for (int u = 0; u < h; ++u)
    for (int v = 0; v < w; ++v) {
      masks[band_index(normalized_radius(u, v, h, w), spec)].at(0, u, v) = 1.0;
    }
  return masks;
}

}  // namespace sfg::spectral
