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

#include <string>
#include <vector>

#include "sfg/core/gradcheck.hpp"

namespace sfg::harness {

/// Names accepted by `run_grad_check`, in pipeline order.
const std::vector<std::string>& grad_check_modules();

struct GradCheckResult {
  std::string module;
  GradCheckReport report;
  double seconds = 0.0;
};

/// Finite-difference check of one module's parameters at the shapes a 64x64
/// scene produces. Inputs come from the frozen encoder on a fixed scene.
/// Throws ConfigError for an unknown module name.
GradCheckResult run_grad_check(const std::string& module, int samples = 20);

}  // namespace sfg::harness
