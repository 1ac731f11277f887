#include "hgf/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hgf/error.hpp"

namespace hgf {

namespace {

constexpr double kPi = std::numbers::pi;

using Idx = Eigen::Index;

struct Offset {
  Idx di;
  Idx dj;
  double u1;
  double u2;
};

// Grid offsets within the closed disc of radius r, excluding the origin.
std::vector<Offset> disc_offsets(const SampledField& F, double r) {
  const double hx = F.x_step();
  const double hxi = F.xi_step();
  require(r >= std::min(hx, hxi) * (1.0 - 1e-12),
          "oscillation radius " + std::to_string(r) + " is below the grid resolution");
  const Idx nx = static_cast<Idx>(std::floor(r / hx * (1.0 + 1e-12)));
  const Idx nxi = static_cast<Idx>(std::floor(r / hxi * (1.0 + 1e-12)));
  std::vector<Offset> out;
  const double r2 = r * r * (1.0 + 1e-12);
  for (Idx a = -nx; a <= nx; ++a)
    for (Idx b = -nxi; b <= nxi; ++b) {
      const double u1 = a * hx;
      const double u2 = b * hxi;
      if ((a != 0 || b != 0) && u1 * u1 + u2 * u2 <= r2) out.push_back({a, b, u1, u2});
    }
  return out;
}

template <class Phase>
SampledField oscillation_impl(const SampledField& F, double r, Phase phase) {
  const auto offsets = disc_offsets(F, r);
  SampledField out{F.x_axis, F.xi_axis, Eigen::MatrixXcd::Zero(F.values.rows(), F.values.cols())};
  const Idx nx = F.values.rows();
  const Idx nxi = F.values.cols();
  for (Idx i = 0; i < nx; ++i)
    for (Idx j = 0; j < nxi; ++j) {
      const cplx v = F.values(i, j);
      double best = 0.0;
      for (const auto& o : offsets) {
        const Idx a = i + o.di;
        const Idx b = j + o.dj;
        if (a < 0 || a >= nx || b < 0 || b >= nxi) continue;
        best = std::max(best, std::abs(v - phase(o, F.x_axis[static_cast<std::size_t>(i)],
                                                  F.xi_axis[static_cast<std::size_t>(j)]) *
                                               F.values(a, b)));
      }
      out.values(i, j) = best;
    }
  return out;
}

double boundary_peak(const SampledField& F) {
  const Idx nx = F.values.rows();
  const Idx nxi = F.values.cols();
  double m = 0.0;
  for (Idx i = 0; i < nx; ++i)
    m = std::max({m, std::abs(F.values(i, 0)), std::abs(F.values(i, nxi - 1))});
  for (Idx j = 0; j < nxi; ++j)
    m = std::max({m, std::abs(F.values(0, j)), std::abs(F.values(nx - 1, j))});
  return m;
}

// Discrete total variation sum (|dF/dx| + |dF/dxi|) dx dxi.
double total_variation(const SampledField& F) {
  const Idx nx = F.values.rows();
  const Idx nxi = F.values.cols();
  double tv = 0.0;
  for (Idx i = 0; i + 1 < nx; ++i)
    for (Idx j = 0; j < nxi; ++j) tv += std::abs(F.values(i + 1, j) - F.values(i, j)) * F.xi_step();
  for (Idx i = 0; i < nx; ++i)
    for (Idx j = 0; j + 1 < nxi; ++j) tv += std::abs(F.values(i, j + 1) - F.values(i, j)) * F.x_step();
  return tv;
}

}  // namespace

AmbiguityField ambiguity(const VectorWindow& w, const Region& region) {
  AmbiguityField a;
  a.field = stft(w, w.samples(), region);
  a.symmetric = symmetric_gauge(a.field);
  a.window_degree = static_cast<int>(w.component_count()) - 1;
  const double n = a.field.l2_norm();
  a.mass_check = n * n;
  return a;
}

SampledField symmetric_gauge(const SampledField& F) {
  SampledField out = F;
  for (std::size_t i = 0; i < F.x_axis.size(); ++i)
    for (std::size_t j = 0; j < F.xi_axis.size(); ++j)
      out.values(static_cast<Idx>(i), static_cast<Idx>(j)) *=
          std::polar(1.0, -kPi * F.x_axis[i] * F.xi_axis[j]);
  return out;
}

SampledField twisted_convolve(const SampledField& G, const SampledField& F) {
  require(G.same_axes(F), "twisted convolution needs identical axes");
  require(F.x_axis.size() % 2 == 1 && F.xi_axis.size() % 2 == 1,
          "twisted convolution needs symmetric axes");
  const double gmax = G.values.cwiseAbs().maxCoeff();
  const double fmax = F.values.cwiseAbs().maxCoeff();
  require(boundary_peak(G) <= 1e-8 * std::max(gmax, 1e-300) &&
              boundary_peak(F) <= 1e-8 * std::max(fmax, 1e-300),
          "twisted convolution: insufficient decay at the region boundary");

  const Idx nx = F.values.rows();
  const Idx nxi = F.values.cols();
  const Idx cx = nx / 2;
  const Idx cxi = nxi / 2;
  const double weight = F.x_step() * F.xi_step();
  // e^{pi i x_i xi_b} and e^{-pi i x_a xi_j} share one table.
  Eigen::MatrixXcd chirp(nx, nxi);
  for (Idx i = 0; i < nx; ++i)
    for (Idx j = 0; j < nxi; ++j)
      chirp(i, j) = std::polar(1.0, kPi * F.x_axis[static_cast<std::size_t>(i)] *
                                        F.xi_axis[static_cast<std::size_t>(j)]);

  SampledField out{F.x_axis, F.xi_axis, Eigen::MatrixXcd::Zero(nx, nxi)};
  Eigen::VectorXcd A(nxi);
  Eigen::VectorXcd acc(nxi);
  for (Idx i = 0; i < nx; ++i) {
    for (Idx a = 0; a < nx; ++a) {
      const Idx fi = i - a + cx;  // row of F at x_i - x_a
      if (fi < 0 || fi >= nx) continue;
      A = G.values.row(a).transpose().cwiseProduct(chirp.row(i).transpose());
      acc.setZero();
      for (Idx j = 0; j < nxi; ++j) {
        // xi_j - xi_b must stay on the axis: b in [j - cxi, j + cxi] clipped.
        const Idx b0 = std::max<Idx>(0, j - cxi);
        const Idx b1 = std::min<Idx>(nxi - 1, j + cxi);
        cplx s{0.0, 0.0};
        for (Idx b = b0; b <= b1; ++b) s += A(b) * F.values(fi, j - b + cxi);
        acc(j) = s;
      }
      out.values.row(i) += acc.cwiseProduct(chirp.row(a).conjugate().transpose()).transpose();
    }
  }
  out.values *= weight;
  return out;
}

SampledField oscillation(const SampledField& F, double r) {
  return oscillation_impl(F, r, [](const Offset&, double, double) { return cplx{1.0, 0.0}; });
}

SampledField twisted_oscillation(const SampledField& F, double r) {
  return oscillation_impl(F, r, [](const Offset& o, double z1, double z2) {
    return std::polar(1.0, -kPi * (o.u1 * z2 - z1 * o.u2));
  });
}

double l1_norm(const SampledField& F) {
  return F.values.cwiseAbs().sum() * F.x_step() * F.xi_step();
}

double osc_l1(const SampledField& F, double r) { return l1_norm(oscillation(F, r)); }

double twisted_osc_l1(const SampledField& F, double r) {
  return l1_norm(twisted_oscillation(F, r));
}

double orthonormality_defect(const VectorWindow& w) {
  const auto& s = w.samples();
  double worst = 0.0;
  for (std::size_t i = 0; i < s.component_count(); ++i)
    for (std::size_t j = 0; j < s.component_count(); ++j) {
      cplx g{0.0, 0.0};
      for (std::size_t k = 0; k < s.components[i].size(); ++k)
        g += s.components[i][k] * std::conj(s.components[j][k]);
      g *= s.grid.step();
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

Certificate certificate(const AmbiguityField& F, const LatticeMatrix& M) {
  Certificate c;
  c.matrix = M;
  c.d = F.window_degree;
  c.det = covolume(M);
  c.r = box_norm(M);
  c.R = twisted_osc_l1(F.symmetric, c.r);
  c.valid = c.R < 1.0;
  if (c.valid) {
    c.A_cert = (1.0 - c.R) * (1.0 - c.R) / c.det;
    c.B_cert = (1.0 + c.R) * (1.0 + c.R) / c.det;
  }
  c.eps_disc = 2.0 * std::max(F.symmetric.x_step(), F.symmetric.xi_step()) *
               total_variation(F.symmetric) / c.det;
  return c;
}

Certificate certificate(const VectorWindow& w, const LatticeMatrix& M, const Region& region) {
  require(orthonormality_defect(w) < 1e-8, "certificate requires orthonormal window components");
  return certificate(ambiguity(w, region), M);
}

Certificate certificate(const VectorWindow& w, const LatticeMatrix& M) {
  return certificate(w, M, Region::default_for(w.max_index()));
}

double c_lower_estimate(const AmbiguityField& F, const std::vector<double>& r_list) {
  require(!r_list.empty(), "c_lower_estimate needs at least one radius");
  double best = std::numeric_limits<double>::infinity();
  for (double r : r_list) {
    require(r > 0.0, "radii must be positive");
    const double R = twisted_osc_l1(F.symmetric, r);
    if (R <= 0.0) throw PreconditionError("R(r) vanished at r = " + std::to_string(r) + ": grid failure");
    best = std::min(best, r / R);
  }
  return best;
}

double c_lower_estimate(const VectorWindow& w, const std::vector<double>& r_list) {
  require(orthonormality_defect(w) < 1e-8, "c_lower_estimate requires orthonormal components");
  return c_lower_estimate(ambiguity(w, Region::default_for(w.max_index())), r_list);
}

}  // namespace hgf
