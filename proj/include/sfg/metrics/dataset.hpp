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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sfg/metrics/metrics.hpp"

namespace sfg::metrics {

struct DatasetEvaluation {
  MetricsReport mean;
  std::vector<std::pair<std::string, MetricsReport>> per_image;  // sorted by stem
  std::vector<std::string> missing;  // files lacking a counterpart
};

/// Pairs *.pgm files by stem across the two directories, evaluates every
/// pair and averages arithmetically (compensated sums). Unpaired files are
/// listed in `missing` and skipped.
DatasetEvaluation evaluate_dataset(const std::filesystem::path& pred_dir,
                                   const std::filesystem::path& gt_dir);

/// Averages already computed per-image reports.
MetricsReport average(const std::vector<MetricsReport>& reports);

enum class TableFormat { kText, kCsv };

/// Columns follow the usual COD table order: S_m, F_beta^w, MAE, E_m.
std::string format_table(const DatasetEvaluation& eval, bool per_image, TableFormat format);

}  // namespace sfg::metrics
