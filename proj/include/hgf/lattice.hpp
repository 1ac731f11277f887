#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace hgf {

/// Invertible 2x2 generator M of the lattice M(Z^2), stored row-major.
/// Row 0 maps to the time shift, row 1 to the frequency shift.
class LatticeMatrix {
 public:
  LatticeMatrix(double m11, double m12, double m21, double m22);

  static LatticeMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static LatticeMatrix diagonal(double a, double b) { return {a, 0.0, 0.0, b}; }
  /// Parses the CLI shorthand "a,b,c,d" (row-major).
  static LatticeMatrix parse(const std::string& text);

  const std::array<double, 4>& entries() const { return m_; }
  double operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }
  double determinant() const { return det_; }

  LatticeMatrix scaled(double t) const;
  /// Left multiplication by diag(a, b).
  LatticeMatrix row_scaled(double a, double b) const;

  std::array<double, 2> apply(double k1, double k2) const {
    return {m_[0] * k1 + m_[1] * k2, m_[2] * k1 + m_[3] * k2};
  }

  /// Spectral norm of M^{-1}.
  double inverse_operator_norm() const;

  bool operator==(const LatticeMatrix& o) const { return m_ == o.m_; }

 private:
  std::array<double, 4> m_;
  double det_;
};

/// Box norm sup{ ||M z||_2 : ||z||_inf <= 1/2 }, attained at a vertex of the square.
double box_norm(const LatticeMatrix& M);

/// |det M|, the area of the fundamental domain M([-1/2, 1/2)^2).
double covolume(const LatticeMatrix& M);

struct LatticePoint {
  int k1;
  int k2;
  double time;
  double freq;
};

struct LatticePointSet {
  std::vector<LatticePoint> points;
  double cutoff_radius;
  LatticeMatrix generator;
};

inline constexpr std::size_t kDefaultPointBudget = 10'000'000;

/// All M k with k in Z^2 and ||M k||_2 <= radius, in lexicographic (k1, k2) order.
LatticePointSet enumerate(const LatticeMatrix& M, double radius,
                          std::size_t budget = kDefaultPointBudget);

/// Expected point count pi r^2 / |det M| of enumerate(M, r), for budgeting.
double expected_point_count(const LatticeMatrix& M, double radius);

}  // namespace hgf
