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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sfg/harness/model.hpp"
#include "sfg/harness/scene.hpp"
#include "sfg/metrics/metrics.hpp"
#include "sfg/objective/loss.hpp"

namespace sfg::harness {

struct AdamWOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

/// Adam with decoupled weight decay: theta -= lr * (m_hat / (sqrt(v_hat) +
/// eps) + wd * theta). Moments are keyed by parameter name and created on
/// first sight.
class AdamW {
 public:
  explicit AdamW(AdamWOptions o) : opt_(o) {}
  void step(ParamStore& params);
  int steps() const { return t_; }

 private:
  struct Moments {
    Tensor m, v;
  };
  AdamWOptions opt_;
  int t_ = 0;
  std::map<std::string, Moments> moments_;
};

/// Aborts a run whose loss stays above `factor` x the first observed loss
/// for `patience` consecutive observations, or turns non-finite.
class DivergenceMonitor {
 public:
  explicit DivergenceMonitor(double factor = 10.0, int patience = 20)
      : factor_(factor), patience_(patience) {}
  /// Throws DivergenceError.
  void observe(double loss);

 private:
  double factor_;
  int patience_;
  double first_ = 0.0;
  int seen_ = 0;
  int above_ = 0;
};

/// A scene plus its cached frozen-encoder outputs.
struct TrainingExample {
  Scene scene;
  EncodedInput input;
};

std::vector<TrainingExample> make_examples(const semantic::StubVisionEncoder& encoder,
                                           const std::vector<SceneSpec>& specs,
                                           const std::string& prompt_template);

struct TrainResult {
  std::vector<objective::LossReport> log;  // batch-mean losses, one per step
};

using StepCallback = std::function<void(int step, const objective::LossReport&)>;

/// Runs cfg.epochs optimizer steps. Step k uses the min(batch_size, n)
/// examples starting at k*batch (cyclic) and averages their losses. Only
/// `params` is updated; a DivergenceMonitor with defaults guards the run.
TrainResult train_toy(const RunConfig& cfg, const std::vector<TrainingExample>& data,
                      ParamStore& params, const StepCallback& on_step = {});

/// Mean metrics of the model's predictions against each example's mask.
metrics::MetricsReport evaluate_model(const RunConfig& cfg,
                                      const std::vector<TrainingExample>& data,
                                      ParamStore& params);

/// Binary checkpoint: "SFGP", u32 count, then per parameter a u32 name
/// length, the name, u32 C/H/W and little-endian float64 values.
void save_checkpoint(const std::filesystem::path& path, const ParamStore& params);
ParamStore load_checkpoint(const std::filesystem::path& path, std::uint64_t seed = 0);

/// "step,l_wbce,l_wiou,l_cos,total" rows.
std::string loss_csv(const TrainResult& r);

}  // namespace sfg::harness
