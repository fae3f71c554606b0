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

#include "sfg/harness/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "sfg/core/errors.hpp"
#include "sfg/core/random.hpp"
#include "sfg/spectral/bands.hpp"
#include "sfg/spectral/fft.hpp"

namespace sfg::harness {

namespace {

using spectral::Complex;

Tensor filtered_texture(const std::vector<Complex>& white, int n, double centre) {
  std::vector<Complex> z(white);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const double r = spectral::normalized_radius(u, v, n, n);
      const double d = (r - centre) / kTextureBandwidth;
      z[static_cast<std::size_t>(u) * n + v] *= std::exp(-0.5 * d * d);
    }
  spectral::fft2d_inplace(z, n, n, true);
  Tensor t(Shape{1, n, n});
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) m += (t[i] = z[i].real());
  m /= static_cast<double>(t.size());
  double var = 0.0;
  for (double& x : t.data()) {
    x -= m;
    var += x * x;
  }
  const double inv = 1.0 / std::sqrt(var / static_cast<double>(t.size()));
  for (double& x : t.data()) x *= inv;
  return t;
}

double smoothstep(double e0, double e1, double x) {
  const double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// Signed distance-like field in pixels: positive inside the object.
struct ShapeField {
  ObjectShape kind;
  double cy, cx;
  double r0, ri;              // blob/ring radii
  double a, b, angle;         // ellipse
  std::array<double, 3> amp{}, phase{};

  double operator()(double y, double x) const {
    const double dy = y - cy, dx = x - cx;
    const double rho = std::hypot(dy, dx);
    switch (kind) {
      case ObjectShape::kBlob: {
        const double th = std::atan2(dy, dx);
        const int harmonic[3] = {2, 3, 5};
        double rad = 1.0;
        for (int k = 0; k < 3; ++k) rad += amp[k] * std::cos(harmonic[k] * th + phase[k]);
        return r0 * rad - rho;
      }
      case ObjectShape::kRing:
        return std::min(r0 - rho, rho - ri);
      case ObjectShape::kElongated: {
        const double u = dx * std::cos(angle) + dy * std::sin(angle);
        const double v = -dx * std::sin(angle) + dy * std::cos(angle);
        return (1.0 - std::hypot(u / a, v / b)) * b;
      }
    }
    return 0.0;
  }
};

ShapeField make_shape(ObjectShape kind, int n, Rng& rng) {
  ShapeField f{};
  f.kind = kind;
  const double area = static_cast<double>(n) * n;
  double extent_y = 0.0, extent_x = 0.0;
  switch (kind) {
    case ObjectShape::kBlob: {
      const double frac = rng.uniform(0.08, 0.28);
      f.r0 = std::sqrt(frac * area / std::numbers::pi);
      for (int k = 0; k < 3; ++k) {
        f.amp[k] = rng.uniform(0.0, 0.12 / (k + 1));
        f.phase[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
      }
      extent_y = extent_x = f.r0 * 1.25;
      break;
    }
    case ObjectShape::kRing: {
      const double frac = rng.uniform(0.10, 0.28);
      const double t = rng.uniform(0.45, 0.65);
      f.r0 = std::sqrt(frac * area / (std::numbers::pi * (1.0 - t * t)));
      f.ri = t * f.r0;
      extent_y = extent_x = f.r0;
      break;
    }
    case ObjectShape::kElongated: {
      const double frac = rng.uniform(0.06, 0.14);
      const double k = rng.uniform(2.0, 3.0);
      f.b = std::sqrt(frac * area / (std::numbers::pi * k));
      f.a = k * f.b;
      f.angle = rng.uniform(0.0, std::numbers::pi);
      extent_x = std::hypot(f.a * std::cos(f.angle), f.b * std::sin(f.angle));
      extent_y = std::hypot(f.a * std::sin(f.angle), f.b * std::cos(f.angle));
      break;
    }
  }
  const double margin = 2.0;
  auto centre = [&](double extent) {
    const double lo = extent + margin, hi = n - 1 - extent - margin;
    return lo < hi ? rng.uniform(lo, hi) : 0.5 * (n - 1);
  };
  f.cy = centre(extent_y);
  f.cx = centre(extent_x);
  return f;
}

}  // namespace

ObjectShape parse_shape(const std::string& name) {
  if (name == "blob") return ObjectShape::kBlob;
  if (name == "ring") return ObjectShape::kRing;
  if (name == "elongated") return ObjectShape::kElongated;
  throw ConfigError("unknown object shape '" + name + "' (blob, ring, elongated)");
}

std::string shape_name(ObjectShape s) {
  switch (s) {
    case ObjectShape::kBlob: return "blob";
    case ObjectShape::kRing: return "ring";
    case ObjectShape::kElongated: return "elongated";
  }
  return "?";
}

std::string make_prompt(std::string_view tmpl, const std::string& class_name) {
  std::string out(tmpl);
  const std::string key = "<class>";
  for (std::size_t pos = out.find(key); pos != std::string::npos; pos = out.find(key, pos + class_name.size())) {
    out.replace(pos, key.size(), class_name);
  }
  return out;
}

Scene generate_scene(const SceneSpec& spec, std::string_view prompt_template) {
  if (std::find(kClassNames.begin(), kClassNames.end(), spec.class_name) == kClassNames.end()) {
    throw ConfigError("unknown class '" + spec.class_name + "'");
  }
  const int n = spec.size;
  if (n < 64 || !spectral::is_power_of_two(n)) {
    throw ConfigError("scene size must be a power of two >= 64, got " + std::to_string(n));
  }

  Rng noise(spec.seed, "scene.noise");
  std::vector<Complex> white(static_cast<std::size_t>(n) * n);
  for (Complex& z : white) z = Complex(noise.normal(), 0.0);
  spectral::fft2d_inplace(white, n, n, false);

  Scene s;
  s.background_texture = filtered_texture(white, n, kTextureCentre);
  s.object_texture = filtered_texture(white, n, kTextureCentre + spec.texture_freq_offset);

  Rng shape_rng(spec.seed, "scene.shape");
  const ShapeField field = make_shape(spec.shape, n, shape_rng);
  Tensor soft(Shape{1, n, n});
  s.mask = Tensor(Shape{1, n, n});
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double d = field(y, x);
      soft.at(0, y, x) = smoothstep(-1.0, 1.0, d);
      s.mask.at(0, y, x) = d > 0.0 ? 1.0 : 0.0;
    }

  Rng tint(spec.seed, "scene.tint");
  s.image = Tensor(Shape{3, n, n});
  for (int c = 0; c < 3; ++c) {
    const double base = tint.uniform(0.35, 0.65);
    const double gain = tint.uniform(0.08, 0.14);
    for (std::size_t i = 0; i < soft.size(); ++i) {
      const double t = soft[i] * s.object_texture[i] + (1.0 - soft[i]) * s.background_texture[i];
      s.image.channel(c)[i] = std::clamp(base + gain * t, 0.0, 1.0);
    }
  }
  s.prompt = make_prompt(prompt_template, spec.class_name);
  return s;
}

std::vector<SceneSpec> scene_set(std::uint64_t base_seed, int count, int size, double offset) {
  std::vector<SceneSpec> out;
  for (int i = 0; i < count; ++i) {
    SceneSpec s;
    s.seed = base_seed + static_cast<std::uint64_t>(i);
    s.size = size;
    s.class_name = std::string(kClassNames[i % kClassNames.size()]);
    s.texture_freq_offset = offset;
    s.shape = static_cast<ObjectShape>(i % 3);
    out.push_back(s);
  }
  return out;
}

std::vector<unsigned char> serialize(const Scene& scene) {
  std::vector<unsigned char> out;
  auto put = [&](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    out.insert(out.end(), b, b + n);
  };
  for (const Tensor* t : {&scene.image, &scene.mask}) put(t->data().data(), t->size() * sizeof(double));
  put(scene.prompt.data(), scene.prompt.size());
  return out;
}

}  // namespace sfg::harness
