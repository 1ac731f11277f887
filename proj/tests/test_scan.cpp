#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hgf/error.hpp"
#include "hgf/frameop.hpp"
#include "hgf/scan.hpp"

using namespace hgf;

TEST_CASE("default scale ladder") {
  const auto t = default_t_list();
  REQUIRE(t.size() == 7);
  CHECK(t.front() == 0.5);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] / t[i - 1] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("inversion recovers a synthetic constant") {
  const LatticeMatrix M0(1.0, 0.25, -0.3, 0.8);
  std::vector<ScanRecord> rows;
  for (double t : {0.2, 0.1, 0.05, 0.025}) {
    const LatticeMatrix M = M0.scaled(t);
    const auto [A, B] = theorem1_predicted_bounds(M, 0.3);
    ScanRecord r;
    r.t = t;
    r.box_norm = box_norm(M);
    r.det = covolume(M);
    r.A_est = A;
    r.B_est = B;
    r.tightness = B / A;
    r.C_emp = r.box_norm / (1.0 - std::sqrt(A * r.det));
    r.converged = true;
    rows.push_back(r);
  }
  const auto est = estimate_cstar(rows);
  CHECK(std::abs(est.value - 0.3) < 1e-9);
  CHECK(est.t_min == 0.025);
  CHECK(est.t_max == 0.2);
  CHECK(est.method == "theorem1-inversion");

  rows.resize(2);
  CHECK_THROWS_AS(estimate_cstar(rows), PreconditionError);
}

TEST_CASE("Gaussian scan") {
  const auto rows = tightness_scan(LatticeMatrix::identity(), 0, {0.5, 0.25, 0.125}, 64);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].tightness > rows[1].tightness);
  CHECK(rows[1].tightness > rows[2].tightness);
  CHECK(rows[2].tightness > 1.0);
  for (const auto& r : rows) CHECK(r.usable());
  const auto est = estimate_cstar(rows);
  CHECK(est.value > 0.0);
  CHECK(est.value <= 1.0);
}

TEST_CASE("non-frame rows are kept") {
  const auto rows = tightness_scan(LatticeMatrix::identity(), 0, {2.0, 1.5}, 32);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].A_est < 1e-6);
  CHECK(rows[0].tightness > 1e6);

  // Two rows are too few for an estimate; the row is flagged instead of aborting.
  const auto probe = sqrt_law_probe({0}, LatticeMatrix::identity(), {0.5, 0.35}, 32);
  REQUIRE(probe.size() == 1);
  CHECK(probe[0].flagged);
  CHECK_FALSE(probe[0].note.empty());
}

TEST_CASE("scan preconditions") {
  CHECK_THROWS_AS(tightness_scan(LatticeMatrix::identity(), 0, {0.25, 0.5}), PreconditionError);
  CHECK_THROWS_AS(tightness_scan(LatticeMatrix::identity(), 0, {}), PreconditionError);
  CHECK_THROWS_AS(tightness_scan(LatticeMatrix::identity(), 0, {0.5, -0.1}), PreconditionError);
}

TEST_CASE("CSV output is deterministic") {
  auto render = [] {
    std::ostringstream os;
    write_scan_csv(tightness_scan(LatticeMatrix(1.0, 0.1, 0.0, 1.0), 1, {0.5, 0.35}, 32), os);
    return os.str();
  };
  const std::string a = render();
  CHECK(a == render());
  CHECK(a.rfind("d,t,box_norm,det,A_est,B_est,tightness,C_emp,converged\n", 0) == 0);
  CHECK(std::count(a.begin(), a.end(), '\n') == 3);
}

TEST_CASE("dilation covariance") {
  CHECK(dilation_covariance_check(0, LatticeMatrix::diagonal(0.4, 0.4), 1.0) == 0.0);
  CHECK(dilation_covariance_check(0, LatticeMatrix::diagonal(0.4, 0.4), 2.0) < 1e-6);
  const auto res = dilation_covariance(1, LatticeMatrix(0.5, 0.1, 0.0, 0.45), 0.7, 32);
  CHECK(res.deviation < 1e-6);
  CHECK(res.reference.A_est > 0.0);
  CHECK_THROWS_AS(dilation_covariance_check(0, LatticeMatrix::identity(), 0.0), PreconditionError);
}
