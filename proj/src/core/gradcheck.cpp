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

#include "sfg/core/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sfg/core/errors.hpp"
#include "sfg/core/random.hpp"

namespace sfg {

double evaluate_loss(ParamStore& params, const LossBuilder& build) {
  Tape tape;
  Context ctx(tape, params);
  Var loss = build(ctx);
  if (!loss.shape().is_scalar()) {
    throw ContractError("gradient check needs a scalar loss, got " +
                        to_string(loss.shape()));
  }
  return loss.value()[0];
}

GradCheckReport check_gradients(ParamStore& params, const LossBuilder& build,
                                const GradCheckOptions& options) {
  // First pass creates any lazily-initialized parameters.
  evaluate_loss(params, build);

  params.zero_grad();
  {
    Tape tape;
    Context ctx(tape, params);
    Var loss = build(ctx);
    tape.backward(loss);
  }

  struct Candidate {
    Param* param;
    const std::string* name;
    std::size_t count;
  };
  std::vector<Candidate> pool;
  std::size_t total = 0;
  for (auto& [name, p] : params) {
    bool keep = options.prefixes.empty();
    for (const auto& prefix : options.prefixes) keep = keep || name.rfind(prefix, 0) == 0;
    if (!keep) continue;
    pool.push_back({&p, &name, p.value.size()});
    total += p.value.size();
  }
  if (total == 0) throw ContractError("gradient check: no parameters to sample");

  Rng rng(options.seed, "gradcheck");
  const std::size_t want = std::min<std::size_t>(options.samples, total);
  std::unordered_set<std::size_t> chosen;
  GradCheckReport report;
  while (chosen.size() < want) {
    const std::size_t flat = rng.below(total);
    if (!chosen.insert(flat).second) continue;
    std::size_t rest = flat;
    Candidate* cand = nullptr;
    for (Candidate& c : pool) {
      if (rest < c.count) {
        cand = &c;
        break;
      }
      rest -= c.count;
    }
    double& slot = cand->param->value[rest];
    const double saved = slot;
    slot = saved + options.epsilon;
    const double up = evaluate_loss(params, build);
    slot = saved - options.epsilon;
    const double down = evaluate_loss(params, build);
    slot = saved;

    GradCheckEntry e;
    e.param = *cand->name;
    e.index = rest;
    e.analytic = cand->param->grad[rest];
    e.numeric = (up - down) / (2.0 * options.epsilon);
    const double scale = std::max({std::abs(e.analytic), std::abs(e.numeric),
                                   options.magnitude_floor});
    e.rel_error = std::abs(e.analytic - e.numeric) / scale;
    report.max_rel_error = std::max(report.max_rel_error, e.rel_error);
    report.entries.push_back(std::move(e));
  }
  report.passed = report.max_rel_error < options.tolerance;
  params.zero_grad();
  return report;
}

}  // namespace sfg
