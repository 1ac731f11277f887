#pragma once

#include <vector>

#include "hgf/lattice.hpp"
#include "hgf/timefreq.hpp"

namespace hgf {

/// F = V_f f on a region, together with its symmetric-gauge form
/// F~(x, xi) = e^{-pi i x xi} F(x, xi). The twisted convolution below
/// reproduces F~ (not F): F~ # F~ = F~ for orthonormal components.
struct AmbiguityField {
  SampledField field;
  SampledField symmetric;
  int window_degree = 0;
  /// Riemann-sum ||F||^2; equals the number of components for orthonormal windows.
  double mass_check = 0.0;
};

AmbiguityField ambiguity(const VectorWindow& w, const Region& region);

/// Multiplies by e^{-pi i x xi}.
SampledField symmetric_gauge(const SampledField& F);

/// (G # F)(x,xi) = int G(x',xi') F(x-x', xi-xi') e^{pi i (x xi' - x' xi)} dx' dxi'
/// by a direct Riemann sum over the shared axes. Throws when either field
/// exceeds 1e-8 of its peak on the region boundary.
SampledField twisted_convolve(const SampledField& G, const SampledField& F);

/// osc_r(F)(p) = max |F(p) - F(q)| over nodes q with |p - q| <= r.
SampledField oscillation(const SampledField& F, double r);

/// Twisted oscillation max_{|u| <= r} |F(z) - e^{-pi i (u1 z2 - z1 u2)} F(z + u)|,
/// the form for which ||osc(G # F)||_2 <= ||G||_2 ||osc(F)||_1 holds exactly
/// and which dominates ||F(z)| - |F(z + u)||.
SampledField twisted_oscillation(const SampledField& F, double r);

/// Riemann-sum L^1 norm of a field.
double l1_norm(const SampledField& F);

double osc_l1(const SampledField& F, double r);
double twisted_osc_l1(const SampledField& F, double r);

struct Certificate {
  double r = 0.0;
  double R = 0.0;
  double A_cert = 0.0;
  double B_cert = 0.0;
  bool valid = false;
  double eps_disc = 0.0;
  double det = 0.0;
  int d = 0;
  LatticeMatrix matrix = LatticeMatrix::identity();
};

/// Max |<f_i, f_j> - delta_ij| over the sampled window components.
double orthonormality_defect(const VectorWindow& w);

/// Oscillation certificate with r = ||M|| and R = ||osc_r(F~)||_1 (twisted
/// oscillation); valid iff R < 1, bounds (1 -/+ R)^2 / |det M|.
Certificate certificate(const VectorWindow& w, const LatticeMatrix& M);
Certificate certificate(const VectorWindow& w, const LatticeMatrix& M, const Region& region);
Certificate certificate(const AmbiguityField& F, const LatticeMatrix& M);

/// min over r of r / R(r): the largest C with R(r) <= r/C on the probed radii.
double c_lower_estimate(const VectorWindow& w, const std::vector<double>& r_list);
double c_lower_estimate(const AmbiguityField& F, const std::vector<double>& r_list);

}  // namespace hgf
