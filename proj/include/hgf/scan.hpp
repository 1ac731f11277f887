#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hgf/frameop.hpp"
#include "hgf/lattice.hpp"

namespace hgf {

struct ScanRecord {
  int d = 0;
  double t = 0.0;
  double box_norm = 0.0;
  double det = 0.0;
  double A_est = 0.0;
  double B_est = 0.0;
  double tightness = 0.0;
  /// ||t M0|| / (1 - sqrt(A_est |det|)); NaN when A_est |det| >= 1.
  double C_emp = 0.0;
  bool converged = false;

  bool usable() const;
};

struct CEstimate {
  int d = 0;
  double value = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::string method;
};

/// Geometric ladder t = 0.5 * 2^{-k/2}, k = 0..6.
std::vector<double> default_t_list();

/// Frame bounds of (h^d, t M0) for each t (sorted descending); rows are
/// computed on a thread pool and returned in t order.
std::vector<ScanRecord> tightness_scan(const LatticeMatrix& M0, int d, const std::vector<double>& t_list,
                                       int K = 64);

/// Minimum of C_emp over usable records, tagged "theorem1-inversion".
/// This inverts the functional form of the tightness law; it is a heuristic
/// fit, not a rigorous constant.
CEstimate estimate_cstar(const std::vector<ScanRecord>& records);

struct SqrtLawRow {
  int d = 0;
  double C_emp = 0.0;
  double scaled = 0.0;  ///< C_emp * sqrt(2d+1)
  bool flagged = false;
  std::string note;
};

std::vector<SqrtLawRow> sqrt_law_probe(const std::vector<int>& d_list, const LatticeMatrix& M0,
                                       const std::vector<double>& t_list, int K = 64);

struct CovarianceResult {
  FrameBounds reference;
  FrameBounds dilated;
  double deviation = 0.0;
};

/// Frame bounds of (h^d, M) against (D_b h^d, diag(b, 1/b) M); the dilated
/// run goes through grid quadrature, the reference through the ladder route.
CovarianceResult dilation_covariance(int d, const LatticeMatrix& M, double b, int K = 64);
double dilation_covariance_check(int d, const LatticeMatrix& M, double b, int K = 64);

/// Header d,t,box_norm,det,A_est,B_est,tightness,C_emp,converged; 17 significant digits.
void write_scan_csv(const std::vector<ScanRecord>& records, std::ostream& os);

}  // namespace hgf
