#include "hgf/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hgf/error.hpp"

namespace hgf {

bool nyquist_guard_holds(double step, int max_index, double max_frequency) {
  const double band = std::sqrt(2.0 * max_index + 1.0) / (2.0 * std::numbers::pi);
  return 1.0 / (2.0 * step) >= max_frequency + band + 1.0;
}

GridSpec::GridSpec(double half_width, double step, int max_index, double max_frequency)
    : half_width_(half_width), step_(step), count_(0), max_index_(max_index),
      max_frequency_(max_frequency) {
  require(std::isfinite(step) && step > 0.0, "grid step must be positive");
  require(std::isfinite(half_width) && half_width > 0.0, "grid half_width must be positive");
  require(max_index >= 0 && max_frequency >= 0.0, "grid capacities must be nonnegative");
  const double n = std::round(2.0 * half_width / step);
  require(n >= 2.0, "grid needs at least two points");
  count_ = static_cast<std::size_t>(n);
  require(std::abs(static_cast<double>(count_) * step / 2.0 - half_width) <= 1e-12,
          "grid half_width must equal count*step/2");
  require(nyquist_guard_holds(step, max_index, max_frequency),
          "Nyquist guard violated: step " + std::to_string(step) + " cannot carry index " +
              std::to_string(max_index) + " at frequency " + std::to_string(max_frequency));
}

GridSpec GridSpec::for_capacity(int max_index, double max_frequency, double extra_half_width,
                                double step) {
  require(max_index >= 0, "max_index must be nonnegative");
  const double base = std::max(std::sqrt(2.0 * max_index + 1.0) + 8.0, 12.0) + extra_half_width;
  const double half_steps = std::ceil(2.0 * base / step);
  return GridSpec(half_steps * step / 2.0, step, max_index, max_frequency);
}

std::vector<double> GridSpec::points() const {
  std::vector<double> xs(count_);
  for (std::size_t j = 0; j < count_; ++j) xs[j] = point(j);
  return xs;
}

double GridSpec::frequency_headroom(int n) const {
  return 1.0 / (2.0 * step_) - std::sqrt(2.0 * n + 1.0) / (2.0 * std::numbers::pi) - 1.0;
}

bool GridSpec::admits(int n, double xi) const { return std::abs(xi) <= frequency_headroom(n); }

}  // namespace hgf
