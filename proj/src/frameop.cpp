#include "hgf/frameop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "hgf/error.hpp"
#include "hgf/hermite.hpp"

namespace hgf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Eigen::Index kBatch = 256;

// Point gamma of the dilated system seen from the undilated one:
// pi(g) D_b = D_b pi(g1/b, b g2).
TFPoint transported(TFPoint g, double b) { return {g.time / b, g.freq * b}; }

}  // namespace

GaborSystemSpec GaborSystemSpec::hermite(int d, const LatticeMatrix& M, int K) {
  require(d >= 0, "window degree must be nonnegative");
  GaborSystemSpec s;
  s.window_indices.resize(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) s.window_indices[static_cast<std::size_t>(i)] = i;
  s.matrix = M;
  s.galerkin_dim = K;
  return s;
}

int GaborSystemSpec::window_degree() const {
  int d = 0;
  for (int n : window_indices) d = std::max(d, n);
  return d;
}

double GaborSystemSpec::radius() const {
  return truncation_radius > 0.0 ? truncation_radius
                                 : default_truncation_radius(galerkin_dim, window_degree());
}

void GaborSystemSpec::validate() const {
  require(!window_indices.empty(), "Gabor system needs at least one window component");
  for (int n : window_indices) require(n >= 0, "window Hermite index must be nonnegative");
  require(galerkin_dim > window_degree(), "Galerkin dimension K must exceed the window degree");
  require(window_dilation > 0.0 && std::isfinite(window_dilation),
          "window dilation must be positive");
  require(truncation_radius >= 0.0, "truncation radius must be nonnegative");
  require(radius() >= box_norm(matrix), "truncation radius must be at least ||M||");
}

GaborSystemSpec GaborSystemSpec::with_dim(int K) const {
  GaborSystemSpec s = *this;
  s.galerkin_dim = K;
  return s;
}

double default_truncation_radius(int K, int d) {
  return std::sqrt(2.0 * K + 1.0) + std::sqrt(2.0 * d + 1.0) + 10.0;
}

Eigen::MatrixXcd cross_ambiguity_ladder(TFPoint p, int K, int nmax) {
  require(K >= 1 && nmax >= 0, "ladder table needs K >= 1 and nmax >= 0");
  const cplx alpha = cplx{p.time, kTwoPi * p.freq} / std::numbers::sqrt2;
  const cplx alpha_bar = std::conj(alpha);
  const double a2 = std::norm(alpha);
  Eigen::MatrixXcd c(K, nmax + 1);
  c(0, 0) = std::exp(cplx{-0.5 * a2, -std::numbers::pi * p.freq * p.time});
  for (int m = 0; m + 1 < K; ++m) c(m + 1, 0) = alpha * c(m, 0) / std::sqrt(m + 1.0);
  for (int n = 0; n < nmax; ++n) {
    const double inv = 1.0 / std::sqrt(n + 1.0);
    c(0, n + 1) = -alpha_bar * c(0, n) * inv;
    for (int m = 1; m < K; ++m)
      c(m, n + 1) = (std::sqrt(static_cast<double>(m)) * c(m - 1, n) - alpha_bar * c(m, n)) * inv;
  }
  return c;
}

Eigen::MatrixXcd cross_ambiguity_quadrature(const GridSpec& grid, TFPoint p, int K, int nmax,
                                            double dilation) {
  require(K >= 1 && nmax >= 0, "quadrature table needs K >= 1 and nmax >= 0");
  const std::size_t N = grid.count();
  const double s = std::sqrt(dilation);
  const double amp = std::pow(dilation, -0.25);
  // Basis B(j, m) = h_{m,a}(x_j), shifted window W(j, n) = (T_y M_eta h_{n,a})(x_j).
  Eigen::MatrixXd B(static_cast<Eigen::Index>(N), K);
  Eigen::MatrixXcd W(static_cast<Eigen::Index>(N), nmax + 1);
  for (std::size_t j = 0; j < N; ++j) {
    const double x = grid.point(j);
    const auto hb = eval_hermite_all(K, x / s);
    for (int m = 0; m < K; ++m) B(static_cast<Eigen::Index>(j), m) = amp * hb[static_cast<std::size_t>(m)];
    const double u = x - p.time;
    const auto hw = eval_hermite_all(nmax + 1, u / s);
    const cplx phase = std::polar(1.0, kTwoPi * p.freq * u);
    for (int n = 0; n <= nmax; ++n)
      W(static_cast<Eigen::Index>(j), n) = amp * hw[static_cast<std::size_t>(n)] * phase;
  }
  return grid.step() * (B.transpose().cast<cplx>() * W);
}

GridSpec quadrature_grid(const GaborSystemSpec& spec) {
  const double b = spec.window_dilation;
  const double reach = std::sqrt(2.0 * spec.galerkin_dim + 1.0) * b;
  // Largest modulation carried by a kept lattice point, plus both bandwidths.
  const double xi_max = spec.radius() / (kTwoPi * b);
  const double step = 1.0 / 32.0;
  const double half = std::ceil(2.0 * (std::max(reach + 8.0, 12.0)) / step) * step / 2.0;
  const int K = spec.galerkin_dim;
  // The guard is checked for the test space index expressed at unit dilation.
  const int eff_index = static_cast<int>(std::ceil((2.0 * K + 1.0) / (b * b) / 2.0));
  return GridSpec(half, step, eff_index, xi_max);
}

std::vector<TFPoint> truncated_lattice(const GaborSystemSpec& spec, std::size_t budget) {
  const double b = spec.window_dilation;
  const LatticeMatrix adapted = spec.matrix.row_scaled(1.0 / b, kTwoPi * b);
  const auto set = enumerate(adapted, spec.radius(), budget);
  std::vector<TFPoint> pts;
  pts.reserve(set.points.size());
  for (const auto& p : set.points) {
    const auto g = spec.matrix.apply(p.k1, p.k2);
    pts.push_back({g[0], g[1]});
  }
  return pts;
}

FrameMatrix assemble_frame_matrix(const GaborSystemSpec& spec, AmbiguityRoute route) {
  spec.validate();
  return assemble_frame_matrix(spec, truncated_lattice(spec), route);
}

FrameMatrix assemble_frame_matrix(const GaborSystemSpec& spec, const std::vector<TFPoint>& points,
                                  AmbiguityRoute route) {
  spec.validate();
  const int K = spec.galerkin_dim;
  const int nmax = spec.window_degree();
  const double b = spec.window_dilation;
  const auto n = static_cast<Eigen::Index>(spec.dimension());
  const double shell = spec.radius() - 2.0;
  std::optional<GridSpec> grid;
  if (route == AmbiguityRoute::Quadrature) grid = quadrature_grid(spec);

  FrameMatrix fm;
  fm.S = Eigen::MatrixXcd::Zero(n, n);
  fm.point_count = points.size();
  Eigen::MatrixXcd U(n, kBatch);
  Eigen::Index filled = 0;
  auto flush = [&] {
    if (filled == 0) return;
    fm.S.selfadjointView<Eigen::Lower>().rankUpdate(U.leftCols(filled));
    filled = 0;
  };
  for (const auto& g : points) {
    Eigen::MatrixXcd c = route == AmbiguityRoute::Ladder
                             ? cross_ambiguity_ladder(transported(g, b), K, nmax)
                             : cross_ambiguity_quadrature(*grid, g, K, nmax, b * b);
    // u(i, m) = <(f_i)_gamma, h_m> = conj(<h_m, (f_i)_gamma>).
    for (std::size_t i = 0; i < spec.component_count(); ++i)
      U.col(filled).segment(static_cast<Eigen::Index>(i) * K, K) = c.col(spec.window_indices[i]);
    const TFPoint p = transported(g, b);
    if (std::hypot(p.time, kTwoPi * p.freq) > shell) fm.tail_bound += U.col(filled).squaredNorm();
    if (++filled == kBatch) flush();
  }
  flush();
  fm.S.triangularView<Eigen::StrictlyUpper>() = fm.S.adjoint();
  // Hermitian by construction; zero the roundoff in the diagonal imaginary part.
  for (Eigen::Index k = 0; k < n; ++k) fm.S(k, k) = cplx{fm.S(k, k).real(), 0.0};
  return fm;
}

Eigen::MatrixXcd galerkin_restriction(const Eigen::MatrixXcd& S, std::size_t components,
                                      int K_full, int K) {
  require(K >= 1 && K <= K_full, "restriction dimension out of range");
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < components; ++i)
    for (int m = 0; m < K; ++m) idx.push_back(static_cast<Eigen::Index>(i) * K_full + m);
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd R(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) R(r, c) = S(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  return R;
}

Extremes extremal_eigenvalues(const Eigen::MatrixXcd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
  if (es.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  const Eigen::Index last = ev.size() - 1;
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(last)));
  for (Eigen::Index k : {Eigen::Index{0}, last}) {
    const Eigen::VectorXcd v = es.eigenvectors().col(k);
    const double res = (S * v - ev(k) * v).norm();
    if (res > 1e-10 * std::max(scale, 1e-300))
      throw ConvergenceError("eigenpair residual " + std::to_string(res) + " exceeds tolerance");
  }
  return {ev(0), ev(last)};
}

double FrameBounds::tightness() const {
  return A_est > 0.0 ? B_est / A_est : std::numeric_limits<double>::infinity();
}

FrameBounds frame_bounds(const GaborSystemSpec& spec, const FrameMatrix& fm) {
  const int K = spec.galerkin_dim;
  const auto full = extremal_eigenvalues(fm.S);
  FrameBounds fb;
  fb.K = K;
  fb.A_est = std::max(full.min, 0.0);
  fb.B_est = full.max;
  fb.tail_bound = fm.tail_bound;
  fb.det = covolume(spec.matrix);
  fb.box_norm = box_norm(spec.matrix);
  const int half = K / 2;
  if (half > spec.window_degree()) {
    const auto coarse =
        extremal_eigenvalues(galerkin_restriction(fm.S, spec.component_count(), K, half));
    const double dA = std::abs(fb.A_est - std::max(coarse.min, 0.0));
    const double dB = std::abs(fb.B_est - coarse.max);
    fb.converged = fb.B_est > 0.0 && std::max(dA, dB) / fb.B_est < 0.05;
  }
  return fb;
}

FrameBounds frame_bounds(const GaborSystemSpec& spec, AmbiguityRoute route) {
  return frame_bounds(spec, assemble_frame_matrix(spec, route));
}

const char* to_string(FrameVerdict v) {
  switch (v) {
    case FrameVerdict::frame: return "frame";
    case FrameVerdict::not_frame: return "not_frame";
    case FrameVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

FrameVerdict is_frame(const GaborSystemSpec& spec, double tol) {
  require(tol > 0.0 && tol < 1.0, "is_frame tolerance must lie in (0, 1)");
  const FrameBounds fb = frame_bounds(spec);
  if (fb.converged && fb.ratio() > tol) return FrameVerdict::frame;

  double previous = 0.0;
  FrameBounds fine = fb;
  if (spec.galerkin_dim < 128) {
    previous = fb.ratio();
    fine = frame_bounds(spec.with_dim(std::max(128, 2 * spec.galerkin_dim)));
  } else {
    const auto fm = assemble_frame_matrix(spec);
    const auto coarse = extremal_eigenvalues(
        galerkin_restriction(fm.S, spec.component_count(), spec.galerkin_dim, spec.galerkin_dim / 2));
    previous = coarse.max > 0.0 ? std::max(coarse.min, 0.0) / coarse.max : 0.0;
  }
  if (fine.converged && fine.ratio() > tol) return FrameVerdict::frame;
  if (fine.converged && fine.ratio() < tol / 10.0 && fine.ratio() <= previous + 1e-12)
    return FrameVerdict::not_frame;
  return FrameVerdict::inconclusive;
}

ComponentAggregate component_bound_aggregate(const GaborSystemSpec& spec) {
  spec.validate();
  const auto points = truncated_lattice(spec);
  ComponentAggregate agg;
  const FrameBounds vec = frame_bounds(spec, assemble_frame_matrix(spec, points));
  agg.A_vec = vec.A_est;
  agg.B_vec = vec.B_est;
  double sum = 0.0;
  for (int idx : spec.window_indices) {
    GaborSystemSpec scalar = spec;
    scalar.window_indices = {idx};
    scalar.truncation_radius = spec.radius();
    const FrameBounds fb = frame_bounds(scalar, assemble_frame_matrix(scalar, points));
    agg.A_i.push_back(fb.A_est);
    agg.B_i.push_back(fb.B_est);
    sum += fb.B_est;
  }
  agg.slack = static_cast<double>(spec.component_count()) * sum - agg.B_vec;
  return agg;
}

bool gl_predicate(const LatticeMatrix& M, int d) {
  require(d >= 0, "Hermite index must be nonnegative");
  return covolume(M) < 1.0 / (d + 1.0);
}

std::pair<double, double> theorem1_predicted_bounds(const LatticeMatrix& M, double C) {
  require(C > 0.0 && C <= 1.0, "constant C must lie in (0, 1]");
  const double q = box_norm(M) / C;
  if (q > 1.0) throw PreconditionError("outside guarantee region: ||M|| exceeds C");
  const double det = covolume(M);
  return {(1.0 - q) * (1.0 - q) / det, (1.0 + q) * (1.0 + q) / det};
}

}  // namespace hgf
