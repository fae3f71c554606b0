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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sfg/core/tensor.hpp"

namespace sfg::harness {

inline constexpr std::array<std::string_view, 8> kClassNames = {
    "cat", "owl", "frog", "moth", "lizard", "crab", "fish", "snake"};

inline constexpr std::string_view kDefaultPromptTemplate =
    "Camouflaged <class> naturally blending into the surrounding environment.";

enum class ObjectShape { kBlob, kRing, kElongated };

ObjectShape parse_shape(const std::string& name);
std::string shape_name(ObjectShape s);

struct SceneSpec {
  std::uint64_t seed = 1;
  int size = 64;
  std::string class_name = "cat";
  /// Radial frequency shift of the object texture relative to the
  /// background, in normalized-radius units.
  double texture_freq_offset = 0.2;
  ObjectShape shape = ObjectShape::kBlob;
};

struct Scene {
  Tensor image;  // (3,H,W) in [0,1]
  Tensor mask;   // (1,H,W) binary
  std::string prompt;
  Tensor background_texture;  // (1,H,W) zero mean, unit variance
  Tensor object_texture;      // (1,H,W) zero mean, unit variance
};

inline constexpr double kTextureCentre = 0.25;
inline constexpr double kTextureBandwidth = 0.08;

/// Both textures filter one shared white-noise spectrum with a radial
/// Gaussian envelope; the object's envelope is centred `offset` higher. The
/// object is composited under a smoothstep-edged shape and both regions get
/// the same colour tint. Throws ConfigError for an unknown class or a size
/// that is not a power of two >= 64.
Scene generate_scene(const SceneSpec& spec,
                     std::string_view prompt_template = kDefaultPromptTemplate);

/// Replaces every "<class>" in the template.
std::string make_prompt(std::string_view prompt_template, const std::string& class_name);

/// Deterministic spread of specs for datasets: seeds base_seed + i, classes
/// and shapes cycled.
std::vector<SceneSpec> scene_set(std::uint64_t base_seed, int count, int size, double offset);

/// Scenes serialised into one byte string (for hashing in tests).
std::vector<unsigned char> serialize(const Scene& scene);

}  // namespace sfg::harness
