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

#include "sfg/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sfg/core/errors.hpp"
#include "sfg/spectral/fft.hpp"

namespace sfg::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("bad value '" + v + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("bad boolean '" + v + "' for " + key);
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool* toggle(ModuleToggles& t, const std::string& key) {
  if (key == "bin") return &t.bin;
  if (key == "bca") return &t.bca;
  if (key == "mfa") return &t.mfa;
  if (key == "mbfm") return &t.mbfm;
  if (key == "fsf") return &t.fsf;
  if (key == "iseb") return &t.iseb;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = {
      "seed", "image_size", "band_edges", "lambda", "learning_rate", "epochs",
      "batch_size", "weight_decay", "bin", "bca", "mfa", "mbfm", "fsf", "iseb",
      "prompt", "texture_freq_offset", "scenes", "scene_seed"};
  return k;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (bool* t = toggle(toggles, key)) {
    *t = parse_bool(key, v);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, v);
  } else if (key == "image_size") {
    image_size = parse_number<int>(key, v);
  } else if (key == "band_edges") {
    band_edges = spectral::BandSpec::parse(v);
  } else if (key == "lambda") {
    lambda = parse_number<double>(key, v);
  } else if (key == "learning_rate") {
    learning_rate = parse_number<double>(key, v);
  } else if (key == "epochs") {
    epochs = parse_number<int>(key, v);
  } else if (key == "batch_size") {
    batch_size = parse_number<int>(key, v);
  } else if (key == "weight_decay") {
    weight_decay = parse_number<double>(key, v);
  } else if (key == "prompt") {
    prompt = v;
  } else if (key == "texture_freq_offset") {
    texture_freq_offset = parse_number<double>(key, v);
  } else if (key == "scenes") {
    scenes = parse_number<int>(key, v);
  } else if (key == "scene_seed") {
    scene_seed = parse_number<std::uint64_t>(key, v);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

std::string RunConfig::get(const std::string& key) const {
  if (bool* t = toggle(const_cast<ModuleToggles&>(toggles), key)) return *t ? "1" : "0";
  if (key == "seed") return std::to_string(seed);
  if (key == "image_size") return std::to_string(image_size);
  if (key == "band_edges") return band_edges.to_string();
  if (key == "lambda") return fmt_double(lambda);
  if (key == "learning_rate") return fmt_double(learning_rate);
  if (key == "epochs") return std::to_string(epochs);
  if (key == "batch_size") return std::to_string(batch_size);
  if (key == "weight_decay") return fmt_double(weight_decay);
  if (key == "prompt") return prompt;
  if (key == "texture_freq_offset") return fmt_double(texture_freq_offset);
  if (key == "scenes") return std::to_string(scenes);
  if (key == "scene_seed") return std::to_string(scene_seed);
  throw ConfigError("unknown key '" + key + "'");
}

void RunConfig::validate() const {
  if (image_size < 64 || !spectral::is_power_of_two(image_size)) {
    throw ConfigError("image_size must be a power of two >= 64");
  }
  if (lambda < 0.0) throw ConfigError("lambda must be non-negative");
  if (learning_rate < 0.0) throw ConfigError("learning_rate must be non-negative");
  if (weight_decay < 0.0) throw ConfigError("weight_decay must be non-negative");
  if (epochs < 0) throw ConfigError("epochs must be non-negative");
  if (batch_size < 1) throw ConfigError("batch_size must be positive");
  if (scenes < 1) throw ConfigError("scenes must be positive");
  band_edges.validate();
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    c.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const std::string& k : keys()) out += k + "=" + get(k) + "\n";
  return out;
}

}  // namespace sfg::harness
