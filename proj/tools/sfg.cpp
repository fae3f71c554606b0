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

// sfg: run, train, evaluate and inspect the camouflage segmentation model.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include "sfg/core/errors.hpp"
#include "sfg/core/random.hpp"
#include "sfg/harness/ablation.hpp"
#include "sfg/harness/config.hpp"
#include "sfg/harness/gridfile.hpp"
#include "sfg/harness/gradsuite.hpp"
#include "sfg/harness/model.hpp"
#include "sfg/harness/scene.hpp"
#include "sfg/harness/trainer.hpp"
#include "sfg/metrics/dataset.hpp"
#include "sfg/metrics/pgm.hpp"
#include "sfg/spectral/fft.hpp"

namespace fs = std::filesystem;
using namespace sfg;
using namespace sfg::harness;

namespace {

/// Config file plus one `--<key>` override per config key.
struct ConfigFlags {
  std::string file;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", file, "key=value config file");
    for (const std::string& key : RunConfig::keys()) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      cmd->add_option("--" + flag, overrides[key], "override config key " + key);
    }
  }

  RunConfig resolve() const {
    RunConfig cfg = file.empty() ? RunConfig{} : RunConfig::load(file);
    for (const auto& [key, value] : overrides)
      if (!value.empty()) cfg.set(key, value);
    cfg.validate();
    return cfg;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
}

struct RunArgs {
  ConfigFlags config;
  std::string image;
  std::string class_name = "cat";
  std::string shape = "blob";
  std::uint64_t scene = 1;
  std::string checkpoint;
  std::string out = "prediction.pgm";
  std::string dump_dir;
  std::string mask_out;
};

int cmd_run(const RunArgs& a) {
  const RunConfig cfg = a.config.resolve();
  Tensor image;
  std::string prompt;
  std::optional<Tensor> mask;
  if (!a.image.empty()) {
    image = metrics::read_pgm(a.image);
    prompt = make_prompt(cfg.prompt, a.class_name);
  } else {
    Scene s = generate_scene({.seed = a.scene,
                              .size = cfg.image_size,
                              .class_name = a.class_name,
                              .texture_freq_offset = cfg.texture_freq_offset,
                              .shape = parse_shape(a.shape)},
                             cfg.prompt);
    image = std::move(s.image);
    prompt = std::move(s.prompt);
    mask = std::move(s.mask);
  }
  ParamStore params = a.checkpoint.empty() ? ParamStore(cfg.seed) : load_checkpoint(a.checkpoint, cfg.seed);
  const semantic::StubVisionEncoder encoder;
  const Prediction p = predict(encoder, params, image, prompt, cfg);
  metrics::write_pgm(a.out, p.map);
  if (mask && !a.mask_out.empty()) metrics::write_pgm(a.mask_out, *mask);
  if (!a.dump_dir.empty()) {
    fs::create_directories(a.dump_dir);
    write_grid(fs::path(a.dump_dir) / "00_image.sfgr", image);
    for (std::size_t i = 0; i < p.intermediates.size(); ++i) {
      const auto& [name, t] = p.intermediates[i];
      write_grid(fs::path(a.dump_dir) / fmt::format("{:02}_{}.sfgr", i + 1, name), t);
    }
  }
  std::printf("prompt: %s\n", prompt.c_str());
  if (mask) {
    const metrics::MetricsReport m = metrics::evaluate_image(p.map, *mask);
    std::printf("S_m %.4f  F_b^w %.4f  MAE %.4f  E_m %.4f\n", m.s_measure, m.f_beta_w, m.mae,
                m.e_measure);
  }
  return 0;
}

struct TrainArgs {
  ConfigFlags config;
  std::string out = "checkpoint.sfgp";
  std::string loss_csv = "loss.csv";
  int log_every = 25;
};

int cmd_train(const TrainArgs& a) {
  const RunConfig cfg = a.config.resolve();
  const semantic::StubVisionEncoder encoder;
  const std::vector<TrainingExample> data = make_examples(
      encoder, scene_set(cfg.scene_seed, cfg.scenes, cfg.image_size, cfg.texture_freq_offset),
      cfg.prompt);
  ParamStore params(cfg.seed);
  TrainResult result;
  try {
    result = train_toy(cfg, data, params, [&](int step, const objective::LossReport& r) {
      if (a.log_every > 0 && (step % a.log_every == 0 || step + 1 == cfg.epochs))
        std::printf("step %4d  wbce %.4f  wiou %.4f  cos %.4f  total %.4f\n", step, r.l_wbce,
                    r.l_wiou, r.l_cos, r.total);
    });
  } catch (const DivergenceError&) {
    write_text(a.loss_csv, loss_csv(result));
    throw;
  }
  save_checkpoint(a.out, params);
  write_text(a.loss_csv, loss_csv(result));
  const metrics::MetricsReport m = evaluate_model(cfg, data, params);
  std::printf("train S_m %.4f  F_b^w %.4f  MAE %.4f  E_m %.4f  (%d scenes)\n", m.s_measure,
              m.f_beta_w, m.mae, m.e_measure, m.n_images);
  return 0;
}

struct EvalArgs {
  std::string pred, gt, format = "text";
  bool per_image = false;
};

int cmd_eval(const EvalArgs& a) {
  const metrics::DatasetEvaluation e = metrics::evaluate_dataset(a.pred, a.gt);
  const auto fmt = a.format == "csv" ? metrics::TableFormat::kCsv : metrics::TableFormat::kText;
  std::fputs(metrics::format_table(e, a.per_image, fmt).c_str(), stdout);
  if (!e.missing.empty()) {
    for (const std::string& m : e.missing) std::fprintf(stderr, "missing counterpart: %s\n", m.c_str());
    return 1;
  }
  return 0;
}

int cmd_gradcheck(const std::string& module, int samples) {
  std::vector<std::string> modules;
  if (module == "all") {
    modules = grad_check_modules();
  } else {
    modules = {module};
  }
  bool ok = true;
  std::printf("%-16s %7s %12s %8s %s\n", "module", "samples", "max_rel_err", "seconds", "result");
  for (const std::string& m : modules) {
    const GradCheckResult r = run_grad_check(m, samples);
    ok = ok && r.report.passed;
    std::printf("%-16s %7zu %12.3e %8.2f %s\n", m.c_str(), r.report.entries.size(),
                r.report.max_rel_error, r.seconds, r.report.passed ? "PASS" : "FAIL");
  }
  return ok ? 0 : 3;
}

int cmd_bench(int max_size, int repeats) {
  std::printf("size microseconds\n");
  for (int n = 8; n <= max_size; n *= 2) {
    Rng rng(static_cast<std::uint64_t>(n), "bench");
    std::vector<spectral::Complex> plane(static_cast<std::size_t>(n) * n);
    for (auto& z : plane) z = {rng.uniform(-1, 1), 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) spectral::fft2d_inplace(plane, n, n, r % 2 == 1);
    const double us =
        std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d %.2f\n", n, us / repeats);
  }
  return 0;
}

struct AblateArgs {
  ConfigFlags config;
  std::string rows = "frequency";
  std::vector<std::uint64_t> seeds{1, 2, 3};
  int train_scenes = 32;
  int test_scenes = 32;
  int steps = 300;
};

int cmd_ablate(const AblateArgs& a) {
  AblationOptions opt;
  opt.base = a.config.resolve();
  if (a.config.overrides.at("epochs").empty()) opt.base.epochs = a.steps;
  opt.seeds = a.seeds;
  opt.train_scenes = a.train_scenes;
  opt.test_scenes = a.test_scenes;
  std::vector<AblationRow> rows;
  if (a.rows == "progressive") {
    rows = progressive_rows();
  } else if (a.rows == "frequency") {
    rows = frequency_rows();
  } else {
    throw ConfigError("unknown row set '" + a.rows + "' (progressive, frequency)");
  }
  const auto cells = run_ablation(opt, rows, [](const std::string& row, std::uint64_t seed,
                                                const metrics::MetricsReport& m) {
    std::fprintf(stderr, "%-22s seed %llu  MAE %.4f\n", row.c_str(),
                 static_cast<unsigned long long>(seed), m.mae);
  });
  std::printf("median over %zu seeds, %d steps, %d held-out scenes\n", opt.seeds.size(),
              opt.base.epochs, opt.test_scenes);
  std::fputs(format_ablation(cells).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic and frequency guided camouflaged object segmentation"};
  app.require_subcommand(1);

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "predict a mask for a synthetic scene or a PGM image");
  run.config.attach(c_run);
  c_run->add_option("--image", run.image, "input PGM (default: synthetic scene)");
  c_run->add_option("--class", run.class_name, "class name substituted into the prompt");
  c_run->add_option("--shape", run.shape, "synthetic object shape: blob, ring, elongated");
  c_run->add_option("--scene", run.scene, "synthetic scene seed");
  c_run->add_option("--checkpoint", run.checkpoint, "trained parameters");
  c_run->add_option("-o,--out", run.out, "prediction PGM");
  c_run->add_option("--mask-out", run.mask_out, "write the synthetic ground truth here");
  c_run->add_option("--dump-dir", run.dump_dir, "write every intermediate as a grid file");

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "train on synthetic scenes");
  train.config.attach(c_train);
  c_train->add_option("-o,--out", train.out, "checkpoint path");
  c_train->add_option("--loss-csv", train.loss_csv, "per-step loss log");
  c_train->add_option("--log-every", train.log_every, "print every N steps (0: quiet)");

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "score prediction PGMs against ground truth PGMs");
  c_eval->add_option("--pred", eval.pred, "prediction directory")->required();
  c_eval->add_option("--gt", eval.gt, "ground truth directory")->required();
  c_eval->add_flag("--per-image", eval.per_image, "one row per image");
  c_eval->add_option("--format", eval.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  std::string gc_module = "all";
  int gc_samples = 20;
  auto* c_gc = app.add_subcommand("gradcheck", "finite-difference gradient checks");
  c_gc->add_option("module", gc_module, "module name or 'all'");
  c_gc->add_option("--samples", gc_samples, "parameters sampled per module");

  int bench_max = 256, bench_repeats = 20;
  auto* c_bench = app.add_subcommand("bench", "time square 2-D FFTs");
  c_bench->add_option("--max-size", bench_max);
  c_bench->add_option("--repeats", bench_repeats);

  AblateArgs ablate;
  auto* c_ablate = app.add_subcommand("ablate", "train module toggle variants and compare");
  ablate.config.attach(c_ablate);
  c_ablate->add_option("--rows", ablate.rows, "frequency or progressive");
  c_ablate->add_option("--seeds", ablate.seeds, "parameter seeds")->delimiter(',');
  c_ablate->add_option("--train-scenes", ablate.train_scenes);
  c_ablate->add_option("--test-scenes", ablate.test_scenes);
  c_ablate->add_option("--steps", ablate.steps, "optimizer steps per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*c_run) return cmd_run(run);
    if (*c_train) return cmd_train(train);
    if (*c_eval) return cmd_eval(eval);
    if (*c_gc) return cmd_gradcheck(gc_module, gc_samples);
    if (*c_bench) return cmd_bench(bench_max, bench_repeats);
    if (*c_ablate) return cmd_ablate(ablate);
  } catch (const Error& e) {
    std::fprintf(stderr, "sfg: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sfg: %s\n", e.what());
    return 1;
  }
  return 0;
}
