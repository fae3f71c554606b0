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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sfg/harness/scene.hpp"
#include "sfg/spectral/bands.hpp"

namespace sfg::harness {

struct ModuleToggles {
  bool bin = true;
  bool bca = true;
  bool mfa = true;
  bool mbfm = true;
  bool fsf = true;
  bool iseb = true;

  static ModuleToggles none() { return {false, false, false, false, false, false}; }
  bool operator==(const ModuleToggles&) const = default;
};

/// Everything a run, a training job or an ablation cell needs. Serialised as
/// a plain key=value file; keys match the CLI flags with '_' -> '-'.
struct RunConfig {
  std::uint64_t seed = 1;
  int image_size = 64;
  spectral::BandSpec band_edges{};
  double lambda = 0.1;
  double learning_rate = 1e-4;
  int epochs = 200;  // optimizer steps
  int batch_size = 12;
  double weight_decay = 0.01;
  ModuleToggles toggles{};
  std::string prompt{kDefaultPromptTemplate};
  double texture_freq_offset = 0.2;
  int scenes = 4;
  std::uint64_t scene_seed = 1000;

  static const std::vector<std::string>& keys();

  /// Throws ConfigError for an unknown key or a malformed value.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  void validate() const;

  /// "key=value" lines; '#' starts a comment, blank lines are ignored.
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);
  std::string to_text() const;
};

}  // namespace sfg::harness
