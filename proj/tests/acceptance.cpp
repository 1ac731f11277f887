// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hgf/certify.hpp"
#include "hgf/cli.hpp"
#include "hgf/frameop.hpp"
#include "hgf/hermite.hpp"
#include "hgf/scan.hpp"
#include "hgf/serialize.hpp"
#include "oracles.hpp"

using namespace hgf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome orthonormality() {
  const auto t0 = std::chrono::steady_clock::now();
  const VectorWindow w = hermite_window(20, GridSpec::for_capacity(20));
  const auto& s = w.samples();
  double worst = 0.0;
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= 20; ++n) {
      cplx g{0.0, 0.0};
      for (std::size_t k = 0; k < s.components[m].size(); ++k)
        g += s.components[m][k] * std::conj(s.components[n][k]);
      worst = std::max(worst, std::abs(g * s.grid.step() - (m == n ? 1.0 : 0.0)));
    }
  const double dt = seconds_since(t0);
  return {worst < 1e-8 && dt < 1.0, fmt("max defect %.2e in %.3f s", worst, dt)};
}

Outcome eigenrelation() {
  const GridSpec grid = GridSpec::for_capacity(5);
  const GridSpec half(grid.half_width(), grid.step() / 2.0);
  double worst = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const double r1 = hermite_operator_residual(n, grid);
    const double ratio = r1 / hermite_operator_residual(n, half);
    worst = std::max(worst, r1);
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
  }
  return {worst < 1e-2 && ratio_lo > 3.5 && ratio_hi < 4.5,
          fmt("max residual %.2e, halving ratios in [%.3f, %.3f]", worst, ratio_lo, ratio_hi)};
}

Outcome box_norm_oracle() {
  const double id_err = std::abs(box_norm(LatticeMatrix::identity()) - std::sqrt(2.0) / 2.0);
  std::mt19937_64 rng(0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const LatticeMatrix M = oracle::random_matrix(rng);
    worst = std::max(worst, std::abs(box_norm(M) - oracle::sampled_box_norm(M, 1'000'000, rng)));
  }
  return {id_err < 1e-12 && worst < 1e-9,
          fmt("identity error %.1e, max oracle gap %.2e over 100 matrices", id_err, worst)};
}

Outcome gaussian_anchors() {
  const auto t0 = std::chrono::steady_clock::now();
  const FrameBounds fine = frame_bounds(GaborSystemSpec::hermite(0, LatticeMatrix::diagonal(0.25, 0.25), 64));
  const FrameBounds crit64 = frame_bounds(GaborSystemSpec::hermite(0, LatticeMatrix::identity(), 64));
  const FrameBounds crit128 = frame_bounds(GaborSystemSpec::hermite(0, LatticeMatrix::identity(), 128));
  const double dt = seconds_since(t0);
  const bool near16 = std::abs(fine.A_est - 16.0) < 0.8 && std::abs(fine.B_est - 16.0) < 0.8;
  const bool tight = fine.tightness() < 1.05;
  const bool critical = crit128.ratio() < 0.01 && crit128.ratio() < crit64.ratio();
  return {near16 && tight && critical && dt < 30.0,
          fmt("M=0.25I: A=%.4f B=%.4f B/A=%.4f (need < 1.05); M=I: A/B=%.2e (K=64) -> %.2e (K=128); "
              "%.2f s",
              fine.A_est, fine.B_est, fine.tightness(), crit64.ratio(), crit128.ratio(), dt)};
}

Outcome tightness_law() {
  const auto rows = tightness_scan(LatticeMatrix::identity(), 0, {0.5, 0.35, 0.25, 0.18}, 64);
  bool ok = true;
  std::string detail = "tightness-1:";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double e = rows[i].tightness - 1.0;
    detail += fmt(" %.3e", e);
    ok = ok && e > 0.0;
    if (i > 0) {
      const double contraction = (rows[i - 1].tightness - 1.0) / e;
      ok = ok && contraction >= 1.4;
    }
  }
  return {ok, detail};
}

Outcome certificate_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> ts{0.05, 0.07, 0.1, 0.14, 0.2, 0.3, 0.5};
  int configs = 0, valid = 0, violations = 0;
  for (int d = 0; d <= 2; ++d) {
    Region region = Region::default_for(d);
    region.x.step = region.xi.step = 1.0 / 32.0;
    const AmbiguityField F = ambiguity(hermite_window(d, grid_for_region(d, region)), region);
    for (std::size_t k = 0; k < ts.size() && configs < 20; ++k, ++configs) {
      const LatticeMatrix M = LatticeMatrix::diagonal(ts[k], ts[k]);
      const Certificate c = certificate(F, M);
      if (!c.valid) continue;
      ++valid;
      const FrameBounds fb = frame_bounds(GaborSystemSpec::hermite(d, M, 64));
      if (c.A_cert > fb.A_est + 1e-6 * c.B_cert || fb.B_est > c.B_cert + 1e-6 * c.B_cert) ++violations;
    }
  }
  return {valid > 0 && violations == 0,
          fmt("%d configurations, %d valid certificates, %d bracket violations, %.1f s", configs, valid,
              violations, seconds_since(t0))};
}

Outcome reproducing_identity() {
  std::vector<double> errs;
  for (double step : {1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0}) {
    const Region region{{9.0, step}, {1.5, step}};
    const auto F = ambiguity(hermite_window(0, grid_for_region(0, region)), region).symmetric;
    const auto FF = twisted_convolve(F, F);
    errs.push_back((FF.values - F.values).norm() / F.values.norm());
  }
  const bool ok = errs[1] < 1e-2 && errs[1] < errs[0] && errs[2] <= std::max(errs[1], 1e-12);
  return {ok, fmt("relative error %.2e (1/8), %.2e (1/16), %.2e (1/32)", errs[0], errs[1], errs[2])};
}

Outcome dilation() {
  const LatticeMatrix M = LatticeMatrix::diagonal(0.4, 0.4);
  const double a = dilation_covariance_check(0, M, 0.5);
  const double b = dilation_covariance_check(0, M, 2.0);
  return {a < 1e-6 && b < 1e-6, fmt("deviation %.2e (b=0.5), %.2e (b=2)", a, b)};
}

Outcome aggregate() {
  bool ok = true;
  std::string detail;
  for (int d : {1, 2}) {
    const auto agg = component_bound_aggregate(GaborSystemSpec::hermite(d, LatticeMatrix::diagonal(0.5, 0.5), 64));
    bool bracket = true;
    for (std::size_t i = 0; i < agg.A_i.size(); ++i)
      bracket = bracket && agg.A_vec <= agg.A_i[i] + 1e-9 && agg.B_i[i] <= agg.B_vec + 1e-9;
    ok = ok && agg.slack >= 0.0 && bracket;
    detail += fmt("d=%d: slack %.3f, bracketing %s; ", d, agg.slack, bracket ? "holds" : "fails");
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome sqrt_law() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = sqrt_law_probe({0, 1, 2, 3, 4}, LatticeMatrix::identity(), default_t_list(), 64);
  double lo = 1e300, hi = 0.0;
  bool flagged = false;
  std::string detail = "C_emp*sqrt(2d+1):";
  for (const auto& r : rows) {
    flagged = flagged || r.flagged;
    lo = std::min(lo, r.scaled);
    hi = std::max(hi, r.scaled);
    detail += fmt(" %.3f", r.scaled);
  }
  const double dt = seconds_since(t0);
  detail += fmt("; spread %.2f (band 3), %.1f s", hi / lo, dt);
  return {!flagged && hi / lo <= 3.0 && dt < 300.0, detail};
}

Outcome cancellation() {
  GaborSystemSpec twin = GaborSystemSpec::hermite(0, LatticeMatrix::diagonal(0.5, 0.5), 64);
  twin.window_indices = {0, 0};
  const FrameVerdict v = is_frame(twin);
  return {v == FrameVerdict::not_frame, fmt("(h0,h0) classified %s", to_string(v))};
}

Outcome gl_cross_check() {
  const LatticeMatrix M = LatticeMatrix::diagonal(0.7, 0.7);
  const bool gl = gl_predicate(M, 1);
  GaborSystemSpec h1 = GaborSystemSpec::hermite(0, M, 96);
  h1.window_indices = {1};
  const FrameBounds fb = frame_bounds(h1);
  return {gl && fb.ratio() > 1e-3,
          fmt("gl_predicate %s, scalar h1 A/B = %.3e at K=96", gl ? "true" : "false", fb.ratio())};
}

Outcome determinism() {
  cli::RunConfig cfg;
  cfg.command = cli::Command::scan;
  cfg.d = 1;
  cfg.matrix = {1.0, 0.2, 0.0, 0.9};
  cfg.K = 48;
  std::ostringstream a, b, log;
  const int ca = cli::run(cfg, a, log);
  const int cb = cli::run(cfg, b, log);
  return {ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty(),
          fmt("%zu bytes of CSV, runs %s", a.str().size(), a.str() == b.str() ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Hermite orthonormality", orthonormality},
      {"eigenrelation residual", eigenrelation},
      {"box norm", box_norm_oracle},
      {"Gaussian frame-bound anchors", gaussian_anchors},
      {"tightness law", tightness_law},
      {"certificate soundness", certificate_soundness},
      {"reproducing identity", reproducing_identity},
      {"dilation covariance", dilation},
      {"aggregate upper bound", aggregate},
      {"sqrt(2d+1) probe", sqrt_law},
      {"cancellation refutation", cancellation},
      {"Groechenig-Lyubarskii cross-check", gl_cross_check},
      {"scan determinism", determinism},
  };
  int failed = 0;
  int id = 0;
  for (const auto& [name, fn] : criteria) {
    ++id;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", id - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
