#pragma once

#include <cstddef>
#include <vector>

namespace hgf {

/// Uniform discretization x_j = -X + j*step, j = 0..count-1, of [-X, X).
///
/// A grid declares the largest Hermite index and modulation frequency it is
/// expected to carry; construction enforces the Nyquist guard
/// 1/(2 step) >= xi_max + sqrt(2 K_max + 1)/(2 pi) + 1 for those capacities.
class GridSpec {
 public:
  GridSpec(double half_width, double step, int max_index = 0, double max_frequency = 0.0);

  /// Default grid for Hermite indices up to max_index: step 1/32 and
  /// half_width = max(sqrt(2K+1) + 8, 12) + extra_half_width, rounded up to
  /// a whole number of steps.
  static GridSpec for_capacity(int max_index, double max_frequency = 0.0,
                               double extra_half_width = 0.0, double step = 1.0 / 32.0);

  double half_width() const { return half_width_; }
  double step() const { return step_; }
  std::size_t count() const { return count_; }
  int max_index() const { return max_index_; }
  double max_frequency() const { return max_frequency_; }

  double point(std::size_t j) const { return -half_width_ + static_cast<double>(j) * step_; }
  std::vector<double> points() const;

  /// Largest frequency the Nyquist guard admits for Hermite index n.
  double frequency_headroom(int n) const;
  /// Whether the guard holds for (n, xi).
  bool admits(int n, double xi) const;

  bool operator==(const GridSpec& o) const {
    return count_ == o.count_ && step_ == o.step_ && half_width_ == o.half_width_;
  }

 private:
  double half_width_;
  double step_;
  std::size_t count_;
  int max_index_;
  double max_frequency_;
};

/// Nyquist guard formula, shared with config validation.
bool nyquist_guard_holds(double step, int max_index, double max_frequency);

}  // namespace hgf
