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

#include <functional>
#include <string>
#include <vector>

#include "sfg/harness/trainer.hpp"

namespace sfg::harness {

struct AblationRow {
  std::string name;
  ModuleToggles toggles;
};

/// Modules added progressively to the all-off baseline, ending with the
/// full model. BCA travels with BIN.
std::vector<AblationRow> progressive_rows();

/// Full model and the same model without the frequency branch.
std::vector<AblationRow> frequency_rows();

struct AblationOptions {
  RunConfig base;  // training budget shared by every cell; toggles ignored
  std::vector<std::uint64_t> seeds{1, 2, 3};
  int train_scenes = 32;
  int test_scenes = 32;
  std::uint64_t test_scene_seed = 100000;
};

struct AblationCell {
  std::string name;
  std::vector<metrics::MetricsReport> per_seed;  // held-out means
  metrics::MetricsReport median;                 // per-metric median over seeds
};

using AblationProgress = std::function<void(const std::string& row, std::uint64_t seed,
                                            const metrics::MetricsReport& result)>;

/// Trains every row once per seed (parameter init seed) on the same
/// training scenes and evaluates on held-out scenes.
std::vector<AblationCell> run_ablation(const AblationOptions& opt,
                                       const std::vector<AblationRow>& rows,
                                       const AblationProgress& progress = {});

std::string format_ablation(const std::vector<AblationCell>& cells);

}  // namespace sfg::harness
