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

#include "sfg/harness/ablation.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "sfg/core/errors.hpp"

namespace sfg::harness {

namespace {

ModuleToggles with(std::initializer_list<bool ModuleToggles::*> on) {
  ModuleToggles t = ModuleToggles::none();
  for (auto m : on) t.*m = true;
  return t;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<AblationRow> progressive_rows() {
  using T = ModuleToggles;
  return {
      {"Base", T::none()},
      {"+BIN", with({&T::bin, &T::bca})},
      {"+BIN+MFA", with({&T::bin, &T::bca, &T::mfa})},
      {"+BIN+MFA+ISEB", with({&T::bin, &T::bca, &T::mfa, &T::iseb})},
      {"+BIN+MFA+MBFM", with({&T::bin, &T::bca, &T::mfa, &T::mbfm})},
      {"+BIN+MFA+MBFM+FSF", with({&T::bin, &T::bca, &T::mfa, &T::mbfm, &T::fsf})},
      {"+BIN+MFA+MBFM+ISEB", with({&T::bin, &T::bca, &T::mfa, &T::mbfm, &T::iseb})},
      {"Full", T{}},
  };
}

std::vector<AblationRow> frequency_rows() {
  ModuleToggles no_freq;
  no_freq.mbfm = false;
  no_freq.fsf = false;
  return {{"Full", ModuleToggles{}}, {"Full-MBFM-FSF", no_freq}};
}

std::vector<AblationCell> run_ablation(const AblationOptions& opt,
                                       const std::vector<AblationRow>& rows,
                                       const AblationProgress& progress) {
  if (opt.seeds.empty()) throw ConfigError("ablation needs at least one seed");
  const RunConfig& base = opt.base;
  base.validate();
  const semantic::StubVisionEncoder encoder;
  const std::vector<TrainingExample> train = make_examples(
      encoder, scene_set(base.scene_seed, opt.train_scenes, base.image_size, base.texture_freq_offset),
      base.prompt);
  const std::vector<TrainingExample> test = make_examples(
      encoder, scene_set(opt.test_scene_seed, opt.test_scenes, base.image_size, base.texture_freq_offset),
      base.prompt);

  std::vector<AblationCell> cells;
  for (const AblationRow& row : rows) {
    AblationCell cell{row.name, {}, {}};
    for (std::uint64_t seed : opt.seeds) {
      RunConfig cfg = base;
      cfg.toggles = row.toggles;
      cfg.seed = seed;
      ParamStore params(seed);
      train_toy(cfg, train, params);
      cell.per_seed.push_back(evaluate_model(cfg, test, params));
      if (progress) progress(row.name, seed, cell.per_seed.back());
    }
    auto pick = [&](double metrics::MetricsReport::*field) {
      std::vector<double> v;
      for (const auto& r : cell.per_seed) v.push_back(r.*field);
      return median(v);
    };
    cell.median.s_measure = pick(&metrics::MetricsReport::s_measure);
    cell.median.f_beta_w = pick(&metrics::MetricsReport::f_beta_w);
    cell.median.mae = pick(&metrics::MetricsReport::mae);
    cell.median.e_measure = pick(&metrics::MetricsReport::e_measure);
    cell.median.n_images = cell.per_seed.front().n_images;
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string format_ablation(const std::vector<AblationCell>& cells) {
  std::string out = fmt::format("{:<22} {:>8} {:>8} {:>8} {:>8}\n", "Method", "S_m", "F_b^w",
                                "MAE", "E_m");
  for (const AblationCell& c : cells) {
    const auto& m = c.median;
    out += fmt::format("{:<22} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f}\n", c.name, m.s_measure,
                       m.f_beta_w, m.mae, m.e_measure);
  }
  return out;
}

}  // namespace sfg::harness
