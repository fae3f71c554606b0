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

#include "sfg/metrics/dataset.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "sfg/core/errors.hpp"
#include "sfg/metrics/pgm.hpp"

namespace sfg::metrics {

namespace fs = std::filesystem;

namespace {

std::map<std::string, fs::path> list_pgm(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      out[entry.path().stem().string()] = entry.path();
    }
  }
  return out;
}

}  // namespace

MetricsReport average(const std::vector<MetricsReport>& reports) {
  CompensatedSum s, f, m, e;
  for (const MetricsReport& r : reports) {
    s.add(r.s_measure);
    f.add(r.f_beta_w);
    m.add(r.mae);
    e.add(r.e_measure);
  }
  MetricsReport out;
  out.n_images = static_cast<int>(reports.size());
  if (reports.empty()) return out;
  const double n = static_cast<double>(reports.size());
  out.s_measure = s.value() / n;
  out.f_beta_w = f.value() / n;
  out.mae = m.value() / n;
  out.e_measure = e.value() / n;
  return out;
}

DatasetEvaluation evaluate_dataset(const fs::path& pred_dir, const fs::path& gt_dir) {
  const auto preds = list_pgm(pred_dir);
  const auto gts = list_pgm(gt_dir);
  DatasetEvaluation eval;
  std::vector<MetricsReport> reports;
  for (const auto& [stem, path] : preds) {
    const auto it = gts.find(stem);
    if (it == gts.end()) {
      eval.missing.push_back(path.string());
      continue;
    }
    const MetricsReport r = evaluate_image(read_pgm(path), read_pgm(it->second));
    eval.per_image.emplace_back(stem, r);
    reports.push_back(r);
  }
  for (const auto& [stem, path] : gts)
    if (!preds.contains(stem)) eval.missing.push_back(path.string());
  eval.mean = average(reports);
  return eval;
}

std::string format_table(const DatasetEvaluation& eval, bool per_image, TableFormat format) {
  std::string out;
  auto row = [&](const std::string& name, const MetricsReport& r) {
    if (format == TableFormat::kCsv) {
      out += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f}\n", name, r.s_measure, r.f_beta_w, r.mae,
                         r.e_measure);
    } else {
      out += fmt::format("{:<16} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f}\n", name, r.s_measure,
                         r.f_beta_w, r.mae, r.e_measure);
    }
  };
  if (format == TableFormat::kCsv) {
    out += "name,s_measure,f_beta_w,mae,e_measure\n";
  } else {
    out += fmt::format("{:<16} {:>8} {:>8} {:>8} {:>8}\n", "name", "S_m", "F_b^w", "MAE", "E_m");
  }
  if (per_image)
    for (const auto& [stem, r] : eval.per_image) row(stem, r);
  row(fmt::format("mean(n={})", eval.mean.n_images), eval.mean);
  return out;
}

}  // namespace sfg::metrics
