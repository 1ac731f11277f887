#include "hgf/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "hgf/error.hpp"

namespace hgf {

namespace {

// Runs job(i) for i in [0, n) on up to hardware_concurrency threads; the
// first exception is rethrown after all workers finish.
template <class Job>
void parallel_for(std::size_t n, Job job) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (error) std::rethrow_exception(error);
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace

bool ScanRecord::usable() const { return std::isfinite(C_emp) && C_emp > 0.0; }

std::vector<double> default_t_list() {
  std::vector<double> t;
  for (int k = 0; k <= 6; ++k) t.push_back(0.5 * std::pow(2.0, -k / 2.0));
  return t;
}

std::vector<ScanRecord> tightness_scan(const LatticeMatrix& M0, int d, const std::vector<double>& t_list,
                                       int K) {
  require(!t_list.empty(), "scan needs at least one t");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    require(t_list[i] > 0.0, "scan parameters t must be positive");
    if (i > 0) require(t_list[i] < t_list[i - 1], "t_list must be sorted strictly descending");
  }
  std::vector<ScanRecord> rows(t_list.size());
  parallel_for(t_list.size(), [&](std::size_t i) {
    const double t = t_list[i];
    const LatticeMatrix M = M0.scaled(t);
    const FrameBounds fb = frame_bounds(GaborSystemSpec::hermite(d, M, K));
    ScanRecord r;
    r.d = d;
    r.t = t;
    r.box_norm = fb.box_norm;
    r.det = fb.det;
    r.A_est = fb.A_est;
    r.B_est = fb.B_est;
    r.tightness = fb.tightness();
    r.converged = fb.converged;
    const double q = fb.A_est * fb.det;
    r.C_emp = q < 1.0 ? fb.box_norm / (1.0 - std::sqrt(q)) : std::numeric_limits<double>::quiet_NaN();
    rows[i] = r;
  });
  return rows;
}

CEstimate estimate_cstar(const std::vector<ScanRecord>& records) {
  CEstimate est;
  est.method = "theorem1-inversion";
  est.value = std::numeric_limits<double>::infinity();
  est.t_min = std::numeric_limits<double>::infinity();
  est.t_max = 0.0;
  std::size_t usable = 0;
  for (const auto& r : records) {
    if (!r.usable()) continue;
    ++usable;
    est.d = r.d;
    est.value = std::min(est.value, r.C_emp);
    est.t_min = std::min(est.t_min, r.t);
    est.t_max = std::max(est.t_max, r.t);
  }
  require(usable >= 3, "estimate_cstar needs at least 3 records with A_est*|det| < 1, got " +
                           std::to_string(usable));
  return est;
}

std::vector<SqrtLawRow> sqrt_law_probe(const std::vector<int>& d_list, const LatticeMatrix& M0,
                                       const std::vector<double>& t_list, int K) {
  require(!d_list.empty(), "sqrt_law_probe needs at least one d");
  std::vector<SqrtLawRow> rows;
  for (int d : d_list) {
    SqrtLawRow row;
    row.d = d;
    try {
      const auto est = estimate_cstar(tightness_scan(M0, d, t_list, K));
      row.C_emp = est.value;
      row.scaled = est.value * std::sqrt(2.0 * d + 1.0);
    } catch (const PreconditionError& e) {
      row.flagged = true;
      row.C_emp = row.scaled = std::numeric_limits<double>::quiet_NaN();
      row.note = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

CovarianceResult dilation_covariance(int d, const LatticeMatrix& M, double b, int K) {
  require(b > 0.0 && std::isfinite(b), "dilation b must be positive");
  CovarianceResult res;
  const GaborSystemSpec ref = GaborSystemSpec::hermite(d, M, K);
  res.reference = frame_bounds(ref, AmbiguityRoute::Ladder);
  if (b == 1.0) {
    res.dilated = res.reference;
    return res;
  }
  GaborSystemSpec dil = GaborSystemSpec::hermite(d, M.row_scaled(b, 1.0 / b), K);
  dil.window_dilation = b;
  res.dilated = frame_bounds(dil, AmbiguityRoute::Quadrature);
  res.deviation = std::max(relative_gap(res.reference.A_est, res.dilated.A_est),
                           relative_gap(res.reference.B_est, res.dilated.B_est));
  return res;
}

double dilation_covariance_check(int d, const LatticeMatrix& M, double b, int K) {
  return dilation_covariance(d, M, b, K).deviation;
}

void write_scan_csv(const std::vector<ScanRecord>& records, std::ostream& os) {
  const auto prec = os.precision(17);
  os << "d,t,box_norm,det,A_est,B_est,tightness,C_emp,converged\n";
  for (const auto& r : records) {
    os << r.d << ',' << r.t << ',' << r.box_norm << ',' << r.det << ',' << r.A_est << ','
       << r.B_est << ',' << r.tightness << ',' << r.C_emp << ',' << (r.converged ? "true" : "false")
       << '\n';
  }
  os.precision(prec);
}

}  // namespace hgf
