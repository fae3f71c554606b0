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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "common/metric_fixtures.hpp"
#include "sfg/core/errors.hpp"
#include "sfg/core/random.hpp"
#include "sfg/harness/ablation.hpp"
#include "sfg/harness/gradsuite.hpp"
#include "sfg/harness/gridfile.hpp"
#include "sfg/harness/trainer.hpp"
#include "sfg/metrics/metrics.hpp"
#include "sfg/metrics/pgm.hpp"
#include "sfg/objective/loss.hpp"
#include "sfg/semantic/text_encoder.hpp"
#include "sfg/spectral/fft.hpp"
#include "sfg/spectral/mbfm.hpp"

namespace fs = std::filesystem;
using namespace sfg;
using spectral::Complex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;
std::FILE* report_file = nullptr;

void emit(const std::string& line) {
  std::fputs(line.c_str(), stdout);
  std::fflush(stdout);
  if (report_file != nullptr) {
    std::fputs(line.c_str(), report_file);
    std::fflush(report_file);
  }
}

void report(const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  emit(fmt::format("{}  {:<22} {} [{:.1f}s]\n", o.pass ? "PASS" : "FAIL", name, o.detail,
                   seconds_since(t0)));
}

Tensor noise(Shape s, std::uint64_t seed) {
  Rng rng(seed, "acceptance");
  Tensor t(s);
  for (double& v : t.data()) v = rng.uniform(-1.0, 1.0);
  return t;
}

// ---- FFT oracle -----------------------------------------------------------

Outcome fft_oracle() {
  const auto t0 = Clock::now();
  double dft_err = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Tensor x = noise(Shape{1, 8, 8}, seed);
    const spectral::SpectralRep rep = spectral::fft2d(x);
    Rng ci(seed, "complex-input");
    std::vector<Complex> z(64);
    for (auto& v : z) v = {ci.uniform(-1, 1), ci.uniform(-1, 1)};
    std::vector<Complex> zf = z;
    spectral::fft2d_inplace(zf, 8, 8, false);
    for (int u = 0; u < 8; ++u)
      for (int v = 0; v < 8; ++v) {
        Complex real_in = 0.0, complex_in = 0.0;
        for (int y = 0; y < 8; ++y)
          for (int k = 0; k < 8; ++k) {
            const Complex w = std::polar(1.0, -2.0 * std::numbers::pi * (u * y + v * k) / 8.0);
            real_in += x.at(0, y, k) * w;
            complex_in += z[y * 8 + k] * w;
          }
        const Complex got = std::polar(rep.magnitude.at(0, u, v), rep.phase.at(0, u, v));
        dft_err = std::max({dft_err, std::abs(got - real_in), std::abs(zf[u * 8 + v] - complex_in)});
      }
  }
  const Tensor big = noise(Shape{3, 64, 64}, 99);
  const Tensor back = spectral::ifft2d(spectral::fft2d(big));
  const double rt = max_abs_diff(big, back);
  const double secs = seconds_since(t0);
  return {dft_err < 1e-10 && rt < 1e-9 && secs < 1.0,
          fmt::format("8x8 DFT err {:.2e} (<1e-10), 64x64 round trip {:.2e} (<1e-9), {:.3f}s (<1s)",
                      dft_err, rt, secs)};
}

// ---- band partition --------------------------------------------------------

Outcome band_partition() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const spectral::BandSpec& spec :
       {spectral::BandSpec{{1.0 / 3.0, 2.0 / 3.0}}, spectral::BandSpec{{0.25, 0.5, 0.75}}}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Tensor x = noise(Shape{4, 16, 16}, 1000 + seed);
      Tensor sum(x.shape());
      for (const Tensor& b : spectral::decompose_bands(x, spec)) sum.accumulate(b);
      worst = std::max(worst, max_abs_diff(sum, x));
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-8 && secs < 5.0,
          fmt::format("max reconstruction error {:.2e} (<1e-8) over 40 cases, {:.2f}s (<5s)",
                      worst, secs)};
}

// ---- gradient suite -------------------------------------------------------

Outcome gradient_suite() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string failed;
  std::size_t min_samples = ~std::size_t{0};
  for (const std::string& m : harness::grad_check_modules()) {
    const harness::GradCheckResult r = harness::run_grad_check(m, 12);
    worst = std::max(worst, r.report.max_rel_error);
    min_samples = std::min(min_samples, r.report.entries.size());
    if (!r.report.passed) failed += " " + m;
  }
  const double secs = seconds_since(t0);
  return {failed.empty() && min_samples >= 10 && secs < 120.0,
          fmt::format("{} modules, >= {} params each, max rel err {:.2e} (<1e-4), {:.1f}s (<120s){}",
                      harness::grad_check_modules().size(), min_samples, worst, secs,
                      failed.empty() ? "" : "; failed:" + failed)};
}

// ---- loss contracts ------------------------------------------------------

Outcome loss_contracts() {
  const harness::Scene s = harness::generate_scene({.seed = 3});
  const Tensor text = semantic::encode_prompt(s.prompt);
  Tape tape;
  const objective::CompositeLoss perfect = objective::composite_loss(
      tape.constant(s.mask), s.mask, tape.constant(text), tape.constant(text));
  const objective::CompositeLoss half = objective::composite_loss(
      tape.constant(Tensor(s.mask.shape(), 0.5)), s.mask, tape.constant(text),
      tape.constant(noise(text.shape(), 4)));
  bool exact = true;
  for (const auto* c : {&perfect, &half}) {
    const objective::LossReport& r = c->report;
    exact = exact && r.total == (r.l_wbce + r.l_wiou) + r.lambda * r.l_cos &&
            c->total.value().item() == r.total;
  }
  const double ln2_err = std::abs(half.report.l_wbce - std::numbers::ln2);
  return {perfect.report.total < 1e-4 && ln2_err <= 1e-9 && exact,
          fmt::format("perfect total {:.2e} (<1e-4), |wbce(0.5) - ln2| {:.1e} (<=1e-9), "
                      "composite == sum: {}",
                      perfect.report.total, ln2_err, exact ? "exact" : "NO")};
}

// ---- metric sanity ---------------------------------------------------------

Outcome metric_sanity() {
  using namespace metrics;
  double perfect_err = 0.0, golden_err = 0.0;
  for (const fixtures::Golden& g : fixtures::kGolden) {
    const auto [pred, gt] = fixtures::fixture(g.kind);
    const MetricsReport p = evaluate_image(gt, gt);
    perfect_err = std::max({perfect_err, std::abs(p.s_measure - 1), std::abs(p.f_beta_w - 1),
                            std::abs(p.e_measure - 1), p.mae});
    const MetricsReport r = evaluate_image(pred, gt);
    golden_err = std::max({golden_err, std::abs(r.s_measure - g.s), std::abs(r.e_measure - g.e),
                           std::abs(r.f_beta_w - g.f), std::abs(r.mae - g.mae)});
  }
  bool monotone = true;
  const Tensor gt = harness::generate_scene({.seed = 12}).mask;
  for (std::uint64_t seed : {1, 2, 3}) {
    MetricsReport prev = evaluate_image(gt, gt);
    for (double level : {0.05, 0.10, 0.20}) {
      const MetricsReport r = evaluate_image(fixtures::salt_and_pepper(gt, level, seed), gt);
      monotone = monotone && r.s_measure < prev.s_measure && r.f_beta_w < prev.f_beta_w &&
                 r.e_measure < prev.e_measure && r.mae > prev.mae;
      prev = r;
    }
  }
  return {perfect_err <= 1e-6 && monotone && golden_err <= 1e-6,
          fmt::format("perfect deviation {:.1e} (<=1e-6), salt-and-pepper 5/10/20% monotone: {}, "
                      "golden deviation {:.1e} (<=1e-6)",
                      perfect_err, monotone ? "yes" : "NO", golden_err)};
}

// ---- desk-scale learning ---------------------------------------------------

Outcome desk_learning() {
  const auto t0 = Clock::now();
  const semantic::StubVisionEncoder encoder;
  harness::RunConfig cfg;
  cfg.epochs = 300;
  const auto data = harness::make_examples(encoder, {harness::SceneSpec{}}, cfg.prompt);
  ParamStore params(cfg.seed);
  const harness::TrainResult r = harness::train_toy(cfg, data, params);
  const double mae = harness::evaluate_model(cfg, data, params).mae;

  // 20-step moving average of the total loss.
  int rises = 0;
  double prev_ma = INFINITY;
  for (std::size_t i = 19; i < r.log.size(); ++i) {
    double ma = 0.0;
    for (std::size_t k = i - 19; k <= i; ++k) ma += r.log[k].total / 20.0;
    if (ma > prev_ma) ++rises;
    prev_ma = ma;
  }
  const double secs = seconds_since(t0);

  harness::RunConfig frozen = cfg;
  frozen.learning_rate = 0.0;
  frozen.epochs = 20;
  ParamStore p0(cfg.seed);
  harness::train_toy(frozen, data, p0);  // creates every parameter at step 0
  const ParamStore before = p0;
  harness::train_toy(frozen, data, p0);
  const bool identical = p0 == before;
  return {mae < 0.05 && identical && secs < 300.0,
          fmt::format("single-scene MAE {:.4f} (<0.05) after 300 steps, {:.1f}s (<300s), "
                      "lr=0 params bit-identical: {}, loss MA20 rises: {}",
                      mae, secs, identical ? "yes" : "NO", rises)};
}

// ---- ablation direction ----------------------------------------------------

Outcome ablation_direction() {
  const auto t0 = Clock::now();
  harness::AblationOptions opt;
  opt.base.epochs = 300;
  const auto cells = harness::run_ablation(opt, harness::frequency_rows());
  const double full = cells[0].median.mae, no_freq = cells[1].median.mae;
  std::string per_seed;
  for (const auto& c : cells) {
    per_seed += " " + c.name + "=[";
    for (const auto& r : c.per_seed) per_seed += fmt::format("{:.4f} ", r.mae);
    per_seed.back() = ']';
  }
  const double secs = seconds_since(t0);
  return {full <= no_freq && secs < 1200.0,
          fmt::format("median held-out MAE full {:.4f} vs no MBFM+FSF {:.4f} (full <= other),{} "
                      "{:.0f}s (<1200s)",
                      full, no_freq, per_seed, secs)};
}

// ---- CLI determinism and formats --------------------------------------------

std::vector<unsigned char> slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const std::string cmd = std::string(SFG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return -1;
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) out += buf;
  const int status = pclose(pipe);
  if (output != nullptr) *output = out;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path workdir() {
  const fs::path d = fs::temp_directory_path() / "sfg_acceptance";
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

Outcome determinism() {
  const fs::path d = workdir();
  for (const char* tag : {"a", "b"}) {
    const int code = run_cli(fmt::format("run --scene 5 --class frog --shape ring --seed 9 -o {} --dump-dir {}",
                                         (d / (std::string(tag) + ".pgm")).string(),
                                         (d / tag).string()));
    if (code != 0) return {false, fmt::format("sfg run exited with {}", code)};
  }
  bool same = slurp(d / "a.pgm") == slurp(d / "b.pgm");
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(d / "a")) {
    ++files;
    same = same && slurp(e.path()) == slurp(d / "b" / e.path().filename());
  }
  std::size_t files_b = std::distance(fs::directory_iterator(d / "b"), fs::directory_iterator());
  same = same && files == files_b && files > 0;
  return {same, fmt::format("prediction PGM and {} grid dumps byte-identical across two runs: {}",
                            files, same ? "yes" : "NO")};
}

Outcome cli_formats() {
  const fs::path d = workdir();
  Tensor t = noise(Shape{4, 8, 8}, 77);
  for (double& v : t.data()) v = static_cast<float>(v);
  harness::write_grid(d / "x.sfgr", t);
  const bool round_trip = bit_equal(harness::read_grid(d / "x.sfgr"), t);

  const std::vector<unsigned char> bytes = slurp(d / "x.sfgr");
  std::uint64_t offset = 0;
  bool rejected = false;
  try {
    harness::decode_grid(std::span(bytes).first(bytes.size() - 3));
  } catch (const FormatError& e) {
    rejected = true;
    offset = e.offset();
  }
  rejected = rejected && offset == bytes.size() - 3;

  fs::create_directories(d / "masks");
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    metrics::write_pgm(d / "masks" / fmt::format("scene{}.pgm", seed),
                       harness::generate_scene({.seed = seed}).mask);
  std::string out;
  const int code = run_cli(fmt::format("eval --pred {0} --gt {0}", (d / "masks").string()), &out);
  const bool perfect_row =
      code == 0 && out.find("mean(n=4)") != std::string::npos &&
      out.find("1.0000   1.0000   0.0000   1.0000") != std::string::npos;
  return {round_trip && rejected && perfect_row,
          fmt::format("grid round trip bit-exact: {}, truncation rejected at offset {}: {}, "
                      "eval pred==gt all-perfect row: {}",
                      round_trip ? "yes" : "NO", offset, rejected ? "yes" : "NO",
                      perfect_row ? "yes" : "NO")};
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  // A full run also leaves its report next to the sources.
  if (!quick) report_file = std::fopen(SFG_REPORT_PATH, "w");
  spectral::ParsevalAudit::enable(true);
  spectral::ParsevalAudit::reset();

  report("fft-oracle", fft_oracle);
  report("band-partition", band_partition);
  report("gradient-suite", gradient_suite);
  report("loss-contracts", loss_contracts);
  report("metric-sanity", metric_sanity);
  if (quick) {
    emit("SKIP  desk-learning          (--quick)\nSKIP  ablation-direction     (--quick)\n");
  } else {
    report("desk-learning", desk_learning);
    report("ablation-direction", ablation_direction);
  }
  report("determinism", determinism);
  report("cli-formats", cli_formats);
  // Last, so it covers every transform made above.
  report("parseval", [] {
    const double rel = spectral::ParsevalAudit::max_relative_error();
    const auto calls = spectral::ParsevalAudit::calls();
    return Outcome{rel < 1e-9 && calls > 0,
                   fmt::format("max relative energy error {:.2e} (<1e-9) over {} transforms in "
                               "this run (unit suites audit their own)",
                               rel, calls)};
  });
  emit(fmt::format("{} criteria failed\n", failures));
  if (report_file != nullptr) std::fclose(report_file);
  return failures;
}
