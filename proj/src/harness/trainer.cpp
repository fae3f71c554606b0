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

#include "sfg/harness/trainer.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "sfg/core/errors.hpp"
#include "sfg/metrics/dataset.hpp"
#include "sfg/semantic/text_encoder.hpp"

namespace sfg::harness {

void AdamW::step(ParamStore& params) {
  ++t_;
  const double c1 = 1.0 - std::pow(opt_.beta1, t_);
  const double c2 = 1.0 - std::pow(opt_.beta2, t_);
  for (auto& [name, p] : params) {
    if (p.grad.empty()) continue;
    auto [it, fresh] = moments_.try_emplace(name);
    if (fresh) it->second = {Tensor(p.value.shape()), Tensor(p.value.shape())};
    Moments& mo = it->second;
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      mo.m[i] = opt_.beta1 * mo.m[i] + (1.0 - opt_.beta1) * g;
      mo.v[i] = opt_.beta2 * mo.v[i] + (1.0 - opt_.beta2) * g * g;
      const double update = (mo.m[i] / c1) / (std::sqrt(mo.v[i] / c2) + opt_.eps);
      p.value[i] -= opt_.lr * (update + opt_.weight_decay * p.value[i]);
    }
  }
}

void DivergenceMonitor::observe(double loss) {
  if (!std::isfinite(loss)) {
    throw DivergenceError(fmt::format("non-finite loss after {} steps", seen_));
  }
  if (seen_++ == 0) first_ = loss;
  above_ = loss > factor_ * first_ ? above_ + 1 : 0;
  if (above_ >= patience_) {
    throw DivergenceError(fmt::format(
        "loss {:.6g} has stayed above {}x the initial {:.6g} for {} consecutive steps (step {})",
        loss, factor_, first_, patience_, seen_ - 1));
  }
}

std::vector<TrainingExample> make_examples(const semantic::StubVisionEncoder& encoder,
                                           const std::vector<SceneSpec>& specs,
                                           const std::string& prompt_template) {
  std::vector<TrainingExample> out;
  out.reserve(specs.size());
  for (const SceneSpec& s : specs) {
    Scene scene = generate_scene(s, prompt_template);
    EncodedInput in = encode_input(encoder, scene.image, scene.prompt);
    out.push_back({std::move(scene), std::move(in)});
  }
  return out;
}

TrainResult train_toy(const RunConfig& cfg, const std::vector<TrainingExample>& data,
                      ParamStore& params, const StepCallback& on_step) {
  cfg.validate();
  if (data.empty()) throw ContractError("training needs at least one scene");
  const int n = static_cast<int>(data.size());
  const int batch = std::min(cfg.batch_size, n);
  AdamW opt({.lr = cfg.learning_rate, .weight_decay = cfg.weight_decay});
  TrainResult result;
  DivergenceMonitor monitor;
  for (int step = 0; step < cfg.epochs; ++step) {
    params.zero_grad();
    objective::LossReport mean{.lambda = cfg.lambda};
    for (int k = 0; k < batch; ++k) {
      const TrainingExample& ex = data[(static_cast<std::size_t>(step) * batch + k) % n];
      Tape tape;
      Context ctx(tape, params);
      const ForwardResult fr = forward_pipeline(ctx, ex.input, cfg);
      const Var visual = objective::visual_embedding(ctx, fr.f_mfa, semantic::kTextDim);
      const objective::CompositeLoss loss =
          objective::composite_loss(fr.prediction, ex.scene.mask, fr.text, visual, cfg.lambda);
      tape.backward(loss.total, 1.0 / batch);
      mean.l_wbce += loss.report.l_wbce / batch;
      mean.l_wiou += loss.report.l_wiou / batch;
      mean.l_cos += loss.report.l_cos / batch;
      mean.total += loss.report.total / batch;
    }
    monitor.observe(mean.total);
    result.log.push_back(mean);
    if (on_step) on_step(step, mean);
    opt.step(params);
  }
  params.zero_grad();
  return result;
}

metrics::MetricsReport evaluate_model(const RunConfig& cfg,
                                      const std::vector<TrainingExample>& data,
                                      ParamStore& params) {
  std::vector<metrics::MetricsReport> reports;
  reports.reserve(data.size());
  for (const TrainingExample& ex : data) {
    Tape tape;
    Context ctx(tape, params);
    const ForwardResult fr = forward_pipeline(ctx, ex.input, cfg);
    reports.push_back(metrics::evaluate_image(fr.prediction.value(), ex.scene.mask));
  }
  return metrics::average(reports);
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

class Reader {
 public:
  explicit Reader(std::vector<unsigned char> b) : b_(std::move(b)) {}
  const unsigned char* take(std::size_t n) {
    if (b_.size() - pos_ < n) throw FormatError("truncated checkpoint", b_.size());
    const unsigned char* p = b_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint32_t u32() {
    const unsigned char* p = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
  }
  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ == b_.size(); }

 private:
  std::vector<unsigned char> b_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ParamStore& params) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f.write("SFGP", 4);
  put_u32(f, static_cast<std::uint32_t>(params.size()));
  for (const auto& [name, p] : params) {
    put_u32(f, static_cast<std::uint32_t>(name.size()));
    f.write(name.data(), static_cast<std::streamsize>(name.size()));
    const Shape s = p.value.shape();
    put_u32(f, s.c);
    put_u32(f, s.h);
    put_u32(f, s.w);
    for (double v : p.value.data()) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      unsigned char b[8];
      for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
      f.write(reinterpret_cast<const char*>(b), 8);
    }
  }
}

ParamStore load_checkpoint(const std::filesystem::path& path, std::uint64_t seed) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path.string());
  Reader r(std::vector<unsigned char>((std::istreambuf_iterator<char>(f)),
                                      std::istreambuf_iterator<char>()));
  if (std::memcmp(r.take(4), "SFGP", 4) != 0) throw FormatError("bad checkpoint magic", 0);
  ParamStore store(seed);
  const std::uint32_t count = r.u32();
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint32_t len = r.u32();
    const unsigned char* np = r.take(len);
    std::string name(reinterpret_cast<const char*>(np), len);
    const std::size_t dims_at = r.pos();
    const std::uint32_t c = r.u32(), h = r.u32(), w = r.u32();
    if (c == 0 || h == 0 || w == 0) throw FormatError("zero dimension for " + name, dims_at);
    Tensor t(Shape{static_cast<int>(c), static_cast<int>(h), static_cast<int>(w)});
    for (std::size_t i = 0; i < t.size(); ++i) {
      const unsigned char* p = r.take(8);
      std::uint64_t bits = 0;
      for (int j = 0; j < 8; ++j) bits |= static_cast<std::uint64_t>(p[j]) << (8 * j);
      t[i] = std::bit_cast<double>(bits);
    }
    store.set(name, std::move(t));
  }
  if (!r.done()) throw FormatError("trailing bytes after checkpoint", r.pos());
  return store;
}

std::string loss_csv(const TrainResult& r) {
  std::string out = "step,l_wbce,l_wiou,l_cos,total\n";
  for (std::size_t i = 0; i < r.log.size(); ++i) {
    const auto& e = r.log[i];
    out += fmt::format("{},{:.10g},{:.10g},{:.10g},{:.10g}\n", i, e.l_wbce, e.l_wiou, e.l_cos,
                       e.total);
  }
  return out;
}

}  // namespace sfg::harness
