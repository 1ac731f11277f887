#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hgf/grid.hpp"
#include "hgf/lattice.hpp"
#include "hgf/timefreq.hpp"

namespace hgf {

/// Gabor system G(f, M(Z^2)) with f_i = D_b h_{window_indices[i]}, analyzed
/// on the Galerkin test space D_b span{h_0, ..., h_{K-1}} in every component.
struct GaborSystemSpec {
  std::vector<int> window_indices;
  LatticeMatrix matrix = LatticeMatrix::identity();
  int galerkin_dim = 64;
  /// Phase-space truncation radius; 0 selects the default for (K, d).
  double truncation_radius = 0.0;
  double window_dilation = 1.0;

  /// Window h^d = (h_0, ..., h_d).
  static GaborSystemSpec hermite(int d, const LatticeMatrix& M, int K = 64);

  int window_degree() const;
  std::size_t component_count() const { return window_indices.size(); }
  std::size_t dimension() const {
    return component_count() * static_cast<std::size_t>(galerkin_dim);
  }
  double radius() const;
  void validate() const;
  GaborSystemSpec with_dim(int K) const;
};

/// sqrt(2K+1) + sqrt(2d+1) + 10.
double default_truncation_radius(int K, int d);

/// How cross-ambiguity entries <T_y M_eta h_n, h_m> are evaluated.
enum class AmbiguityRoute {
  Ladder,      ///< closed-form ladder-operator recurrence
  Quadrature,  ///< Riemann sums on a GridSpec
};

/// c(m, n) = <T_y M_eta h_n, h_m> for m < K, n <= nmax, from
///   c(0,0)   = exp(-|alpha|^2/2 - pi i eta y),  alpha = (y + 2 pi i eta)/sqrt 2,
///   c(m+1,0) = alpha c(m,0) / sqrt(m+1),
///   c(m,n+1) = (sqrt(m) c(m-1,n) - conj(alpha) c(m,n)) / sqrt(n+1).
Eigen::MatrixXcd cross_ambiguity_ladder(TFPoint p, int K, int nmax);

/// Same quantity for the dilated pair <T_y M_eta h_{n,a}, h_{m,a}>, by quadrature.
Eigen::MatrixXcd cross_ambiguity_quadrature(const GridSpec& grid, TFPoint p, int K, int nmax,
                                            double dilation = 1.0);

/// Grid on which the quadrature route resolves the system to ~1e-12.
GridSpec quadrature_grid(const GaborSystemSpec& spec);

/// Lattice points kept by the truncation ||(g1/b, 2 pi b g2)||_2 <= radius,
/// in lexicographic (k1, k2) order.
std::vector<TFPoint> truncated_lattice(const GaborSystemSpec& spec,
                                       std::size_t budget = kDefaultPointBudget);

struct FrameMatrix {
  Eigen::MatrixXcd S;
  std::size_t point_count = 0;
  /// Sum of ||u_gamma||^2 over the outermost shell (radius - 2, radius].
  double tail_bound = 0.0;
};

/// Galerkin matrix S[(i,m),(j,n)] = sum_gamma <h_n,(h_j)_gamma> conj(<h_m,(h_i)_gamma>),
/// row/column (i, m) stored at i*K + m.
FrameMatrix assemble_frame_matrix(const GaborSystemSpec& spec,
                                  AmbiguityRoute route = AmbiguityRoute::Ladder);
FrameMatrix assemble_frame_matrix(const GaborSystemSpec& spec, const std::vector<TFPoint>& points,
                                  AmbiguityRoute route = AmbiguityRoute::Ladder);

/// Principal submatrix on the first `K` Hermite functions of every component.
Eigen::MatrixXcd galerkin_restriction(const Eigen::MatrixXcd& S, std::size_t components,
                                      int K_full, int K);

struct Extremes {
  double min;
  double max;
};

/// Extremal eigenvalues of a Hermitian matrix; throws ConvergenceError when
/// the eigensolver fails or a residual ||Sv - lambda v|| exceeds 1e-10 ||S||.
Extremes extremal_eigenvalues(const Eigen::MatrixXcd& S);

struct FrameBounds {
  double A_est = 0.0;
  double B_est = 0.0;
  int K = 0;
  bool converged = false;
  double tail_bound = 0.0;
  double det = 0.0;
  double box_norm = 0.0;

  double ratio() const { return B_est > 0.0 ? A_est / B_est : 0.0; }
  double tightness() const;
};

FrameBounds frame_bounds(const GaborSystemSpec& spec,
                         AmbiguityRoute route = AmbiguityRoute::Ladder);
/// Bounds from an already assembled matrix (K/2 comparison via its principal submatrix).
FrameBounds frame_bounds(const GaborSystemSpec& spec, const FrameMatrix& fm);

enum class FrameVerdict { frame, not_frame, inconclusive };

const char* to_string(FrameVerdict v);

/// Frame if converged with A/B > tol; not_frame if converged with A/B < tol/10
/// and the ratio did not grow under refinement to K = max(128, 2K) (or
/// against K/2 when already K >= 128); inconclusive otherwise.
FrameVerdict is_frame(const GaborSystemSpec& spec, double tol = 1e-3);

struct ComponentAggregate {
  double A_vec = 0.0;
  double B_vec = 0.0;
  std::vector<double> A_i;
  std::vector<double> B_i;
  /// count * sum_i B_i - B_vec.
  double slack = 0.0;
};

ComponentAggregate component_bound_aggregate(const GaborSystemSpec& spec);

/// |det M| < 1/(d+1): sufficient for G(h_d, M(Z^2)) to be a frame.
bool gl_predicate(const LatticeMatrix& M, int d);

/// ((1 - ||M||/C)^2 / |det M|, (1 + ||M||/C)^2 / |det M|) for ||M|| <= C.
std::pair<double, double> theorem1_predicted_bounds(const LatticeMatrix& M, double C);

}  // namespace hgf
