#include "hgf/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hgf/error.hpp"

namespace hgf {

LatticeMatrix::LatticeMatrix(double m11, double m12, double m21, double m22)
    : m_{m11, m12, m21, m22}, det_(m11 * m22 - m12 * m21) {
  for (double v : m_) require(std::isfinite(v), "lattice matrix entries must be finite");
  require(std::abs(det_) > 1e-12, "lattice matrix must be invertible (|det M| > 1e-12)");
}

LatticeMatrix LatticeMatrix::parse(const std::string& text) {
  std::array<double, 4> v{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    require(i < 4, "matrix shorthand needs exactly four entries: a,b,c,d");
    try {
      std::size_t used = 0;
      v[i] = std::stod(item, &used);
      require(item.find_first_not_of(" \t", used) == std::string::npos,
              "bad matrix entry '" + item + "'");
    } catch (const std::logic_error&) {
      throw PreconditionError("bad matrix entry '" + item + "'");
    }
    ++i;
  }
  require(i == 4, "matrix shorthand needs exactly four entries: a,b,c,d");
  return {v[0], v[1], v[2], v[3]};
}

LatticeMatrix LatticeMatrix::scaled(double t) const {
  return {t * m_[0], t * m_[1], t * m_[2], t * m_[3]};
}

LatticeMatrix LatticeMatrix::row_scaled(double a, double b) const {
  return {a * m_[0], a * m_[1], b * m_[2], b * m_[3]};
}

double LatticeMatrix::inverse_operator_norm() const {
  // ||M^{-1}||_2 = 1 / sigma_min(M).
  const double fro2 = m_[0] * m_[0] + m_[1] * m_[1] + m_[2] * m_[2] + m_[3] * m_[3];
  const double det2 = det_ * det_;
  const double disc = std::sqrt(std::max(fro2 * fro2 - 4.0 * det2, 0.0));
  const double smin2 = 2.0 * det2 / (fro2 + disc);
  return 1.0 / std::sqrt(smin2);
}

double box_norm(const LatticeMatrix& M) {
  const auto a = M.apply(0.5, 0.5);
  const auto b = M.apply(0.5, -0.5);
  return std::max(std::hypot(a[0], a[1]), std::hypot(b[0], b[1]));
}

double covolume(const LatticeMatrix& M) { return std::abs(M.determinant()); }

double expected_point_count(const LatticeMatrix& M, double radius) {
  return std::numbers::pi * radius * radius / covolume(M);
}

LatticePointSet enumerate(const LatticeMatrix& M, double radius, std::size_t budget) {
  require(std::isfinite(radius) && radius > 0.0, "enumeration radius must be positive");
  const double kbound = std::ceil(radius * M.inverse_operator_norm());
  const double box = (2.0 * kbound + 1.0) * (2.0 * kbound + 1.0);
  if (kbound > 1e6 || expected_point_count(M, radius) > 2.0 * static_cast<double>(budget) + 16.0 ||
      box > 1e10) {
    throw BudgetError("lattice enumeration at radius " + std::to_string(radius) +
                      " exceeds the point budget");
  }
  const int kmax = static_cast<int>(kbound);
  LatticePointSet set{{}, radius, M};
  const double r2 = radius * radius;
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      const auto p = M.apply(k1, k2);
      if (p[0] * p[0] + p[1] * p[1] <= r2) {
        if (set.points.size() >= budget) {
          throw BudgetError("lattice enumeration exceeds the point budget of " +
                            std::to_string(budget));
        }
        set.points.push_back({k1, k2, p[0], p[1]});
      }
    }
  }
  return set;
}

}  // namespace hgf
