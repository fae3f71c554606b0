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
#include <functional>
#include <string>
#include <vector>

#include "sfg/core/layers.hpp"

namespace sfg {

struct GradCheckOptions {
  int samples = 10;
  double epsilon = 1e-4;
  double tolerance = 1e-4;
  /// Gradients below this magnitude are compared on an absolute scale:
  /// rel = |a - n| / max(|a|, |n|, floor).
  double magnitude_floor = 1e-6;
  std::uint64_t seed = 7;
  /// Restrict sampling to parameters whose name starts with one of these.
  std::vector<std::string> prefixes;
};

struct GradCheckEntry {
  std::string param;
  std::size_t index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double max_rel_error = 0.0;
  bool passed = true;
};

using LossBuilder = std::function<Var(Context&)>;

/// Compares tape gradients against central finite differences on randomly
/// chosen parameter entries. `build` must produce a scalar from a fresh
/// context and be a pure function of the parameter values.
GradCheckReport check_gradients(ParamStore& params, const LossBuilder& build,
                                const GradCheckOptions& options = {});

/// Evaluates `build` once without running backward.
double evaluate_loss(ParamStore& params, const LossBuilder& build);

}  // namespace sfg
