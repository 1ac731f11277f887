#include "hgf/hermite.hpp"

#include <cmath>
#include <numbers>

#include "hgf/error.hpp"

namespace hgf {

namespace {

constexpr double kRescaleAbove = 1e150;
const double kLogRescale = std::log(kRescaleAbove);

// pi^{-1/4}
const double kGaussNorm = std::pow(std::numbers::pi, -0.25);

}  // namespace

HermiteSpec::HermiteSpec(int max_index_, double dilation_, GridSpec grid_)
    : max_index(max_index_), dilation(dilation_), grid(grid_) {
  require(max_index >= 0, "Hermite max_index must be nonnegative");
  require(dilation > 0.0, "Hermite dilation must be positive");
  require(effective_support() + 6.0 <= grid.half_width(),
          "grid too narrow for the requested Hermite system");
}

double HermiteSpec::effective_support() const { return hermite_support(max_index, dilation); }

double hermite_support(int n, double a) { return std::sqrt(2.0 * n + 1.0) * std::sqrt(std::abs(a)); }

std::vector<double> eval_hermite_all(int count, double x) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)), 0.0);
  if (count <= 0) return out;
  // Recurrence on e^{x^2/2} h_n, so the seed is O(1); the Gaussian factor and
  // accumulated rescalings are reapplied per output through a log offset.
  const double gauss_log = -0.5 * x * x;
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = kGaussNorm;
  auto emit = [&](int n, double v) {
    const double e = log_scale + gauss_log;
    out[static_cast<std::size_t>(n)] = v == 0.0 ? 0.0 : v * std::exp(e);
  };
  emit(0, cur);
  for (int n = 0; n + 1 < count; ++n) {
    const double next = std::sqrt(2.0 / (n + 1.0)) * x * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      cur /= kRescaleAbove;
      prev /= kRescaleAbove;
      log_scale += kLogRescale;
    }
    emit(n + 1, cur);
  }
  return out;
}

double eval_hermite(int n, double x) {
  require(n >= 0, "Hermite index must be nonnegative");
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = kGaussNorm;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      cur /= kRescaleAbove;
      prev /= kRescaleAbove;
      log_scale += kLogRescale;
    }
  }
  return cur == 0.0 ? 0.0 : cur * std::exp(log_scale);
}

double dilated_hermite(int n, double a, double x) {
  require(a != 0.0 && std::isfinite(a), "dilation must be nonzero");
  const double s = std::abs(a);
  if (s == 1.0) return eval_hermite(n, x);
  return std::pow(s, -0.25) * eval_hermite(n, x / std::sqrt(s));
}

double scaled_hermite_operator_residual(int n, double a, const GridSpec& grid) {
  require(n >= 0, "Hermite index must be nonnegative");
  require(a != 0.0, "dilation must be nonzero");
  const std::size_t N = grid.count();
  const double h = grid.step();
  std::vector<double> v(N);
  for (std::size_t j = 0; j < N; ++j) v[j] = dilated_hermite(n, a, grid.point(j));
  const double abs_a = std::abs(a);
  double res = 0.0;
  double norm = 0.0;
  for (std::size_t j = 1; j + 1 < N; ++j) {
    const double x = grid.point(j);
    const double d2 = (v[j + 1] - 2.0 * v[j] + v[j - 1]) / (h * h);
    const double r = x * x * v[j] - a * a * d2 - abs_a * (2.0 * n + 1.0) * v[j];
    res += r * r;
    norm += v[j] * v[j];
  }
  return std::sqrt(res / norm);
}

double hermite_operator_residual(int n, const GridSpec& grid) {
  return scaled_hermite_operator_residual(n, 1.0, grid);
}

int dlambda(double lambda) {
  require(lambda != 0.0 && std::isfinite(lambda), "dlambda requires nonzero lambda");
  return static_cast<int>(std::floor(1.0 / (2.0 * std::abs(lambda)) - 0.5));
}

}  // namespace hgf
