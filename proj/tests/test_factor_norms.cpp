#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <random>

#include "dpt/gamma2.hpp"
#include "dpt/sign_matrix.hpp"

using namespace dpt;
using Eigen::MatrixXd;

namespace {

double trace_norm(const MatrixXd& m) { return Eigen::JacobiSVD<MatrixXd>(m).singularValues().sum(); }

double max_row(const MatrixXd& m) {
  double best = 0;
  for (int i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).norm());
  return best;
}

// max over unit u, v of ‖diag(u) M diag(v)‖_tr is γ₂(M); any choice gives a lower bound.
double rescaled_trace_lower(const MatrixXd& m, std::mt19937_64& rng, int samples) {
  std::normal_distribution<double> g;
  MatrixXd u = MatrixXd::Constant(m.rows(), 1, 1 / std::sqrt(double(m.rows())));
  MatrixXd v = MatrixXd::Constant(m.cols(), 1, 1 / std::sqrt(double(m.cols())));
  double best = trace_norm(u.asDiagonal() * m * v.asDiagonal());
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < u.rows(); ++i) u(i) = g(rng);
    for (int j = 0; j < v.rows(); ++j) v(j) = g(rng);
    u /= u.norm();
    v /= v.norm();
    best = std::max(best, trace_norm(u.col(0).asDiagonal() * m * v.col(0).asDiagonal()));
  }
  return best;
}

void check_certificate(const NormCertificate& c) {
  CHECK(c.converged);
  CHECK(c.lower <= c.value + 1e-12);
  CHECK(c.value <= c.upper + 1e-12);
  CHECK(c.gap <= 1e-6);
}

}  // namespace

TEST_CASE("closed-form values") {
  for (const char* name : {"J1x1", "J3x5", "J4x4"}) {
    auto c = gamma2(catalog_matrix(name).to_real());
    check_certificate(c);
    CHECK(c.value == doctest::Approx(1).epsilon(1e-7));
  }
  for (int N : {2, 4, 8, 16}) {
    auto h = catalog_matrix("H" + std::to_string(N));
    CHECK(gamma2(h.to_real()).value == doctest::Approx(std::sqrt(double(N))).epsilon(1e-7));
    for (double e : {0.25, 0.5})
      CHECK(gamma2_eps(h, e).value == doctest::Approx((1 - e) * std::sqrt(double(N))).epsilon(1e-7));
  }
  CHECK(gamma2_eps(catalog_matrix("J3x5"), 0.25).value == doctest::Approx(0.75).epsilon(1e-7));
  CHECK(gamma2_dual(MatrixXd::Ones(1, 1)).value == doctest::Approx(1).epsilon(1e-7));
  auto star = PartialSignMatrix(2, 3, std::vector<int8_t>(6, 0));
  CHECK(gamma2_eps(star, 0.3).value == doctest::Approx(0).epsilon(1e-7));
}

TEST_CASE("gamma2 lies between independent bounds") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 12; ++trial) {
    int r = 1 + trial % 4, c = 1 + (trial / 2) % 4;
    MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = u(rng);
    auto cert = gamma2(m);
    check_certificate(cert);
    double upper = std::min(max_row(m), max_row(m.transpose()));
    CHECK(cert.value <= upper + 1e-7);
    CHECK(cert.value >= rescaled_trace_lower(m, rng, 200) - 1e-7);
    CHECK(cert.value >= trace_norm(m) / std::sqrt(double(r * c)) - 1e-7);
    // ⟨M, M⟩ ≤ γ₂(M) γ₂*(M)
    auto d = gamma2_dual(m);
    CHECK(d.value * cert.value >= m.squaredNorm() - 1e-6);
    CHECK(d.value <= trace_norm(m) * std::sqrt(double(r * c)) + 1e-6);
  }
  auto h4 = catalog_matrix("H4").to_real();
  auto d = gamma2_dual(h4);
  CHECK(d.value <= 32 + 1e-6);
  CHECK(d.value == doctest::Approx(8).epsilon(1e-6));
}

TEST_CASE("approximate norm certificates reproduce the constraints") {
  for (const char* name : {"H4", "PH4", "DISJ4", "GT4", "I3", "J2x2"})
    for (double e : {0.1, 0.25, 0.5}) {
      CAPTURE(name);
      CAPTURE(e);
      auto f = catalog_matrix(name);
      auto c = gamma2_eps(f, e);
      check_certificate(c);
      MatrixXd prod = c.factor_rows * c.factor_cols;
      for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
          int v = f.at(i, j);
          double lo = v == 0 ? -(1 + e) : v - e, hi = v == 0 ? 1 + e : v + e;
          CHECK(prod(i, j) >= lo - 1e-6);
          CHECK(prod(i, j) <= hi + 1e-6);
        }
      CHECK(max_row(c.factor_rows) * max_row(c.factor_cols.transpose()) == doctest::Approx(c.upper).epsilon(1e-9));
    }
}

TEST_CASE("approximate norm is nonincreasing in the error") {
  for (const char* name : {"H2", "H4", "PH4", "DISJ4", "GT4", "J3x5"}) {
    double prev = INFINITY;
    for (double e : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9}) {
      double v = gamma2_eps(catalog_matrix(name), e).value;
      CHECK(v <= prev + 1e-7);
      prev = v;
    }
  }
}

TEST_CASE("dual norm is multiplicative on random pairs") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 6; ++trial) {
    MatrixXd a(2, 2), b(2, 2);
    for (int i = 0; i < 4; ++i) {
      a(i / 2, i % 2) = u(rng);
      b(i / 2, i % 2) = u(rng);
    }
    double lhs = gamma2_dual(kron(a, b)).value, rhs = gamma2_dual(a).value * gamma2_dual(b).value;
    CHECK(std::fabs(lhs - rhs) <= 1e-5 * rhs);
  }
}

TEST_CASE("generalized discrepancy values") {
  CHECK(gdm_bound(catalog_matrix("H16"), Rational(1, 3)) == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(gdm_bound(catalog_matrix("J4x4"), Rational(1, 3)) == 0);
  auto disj = catalog_matrix("DISJ4");
  double direct = 0.25 * std::log2(gamma2_eps(disj, 0.5).value);
  CHECK(gdm_bound(disj, Rational(1, 3)) == doctest::Approx(std::max(0.0, direct)).epsilon(1e-9));
  CHECK_THROWS(gdm_bound(disj, Rational(1, 2)));
}

TEST_CASE("error reduction") {
  auto h4 = catalog_matrix("H4");
  auto r = gamma2_error_reduce(h4, Rational(1, 8));
  CHECK(r.within);
  CHECK(r.bound >= 0.875 * 2 - 1e-7);
  auto gt = catalog_matrix("GT4");
  auto g = gamma2_error_reduce(gt, Rational(1, 8));
  CHECK(g.within);
  CHECK(g.bound >= gamma2_eps(gt, 0.125).value - 1e-7);
  CHECK_THROWS(gamma2_error_reduce(catalog_matrix("J2x2"), Rational(1, 8)));
}

TEST_CASE("property suite") {
  for (const auto& c : gamma2_property_suite(7)) {
    CAPTURE(c.item);
    CAPTURE(c.instance);
    CHECK(c.pass);
    bool recomputed = c.relation == "eq" ? std::fabs(c.lhs - c.rhs) <= c.tolerance : c.lhs >= c.rhs - c.tolerance;
    CHECK(recomputed == c.pass);
  }
}

TEST_CASE("size cap") {
  NormSettings s;
  s.max_dim = 8;
  CHECK_THROWS_AS(gamma2(catalog_matrix("H16").to_real(), s), SizeCapExceeded);
  CHECK_THROWS_AS(gamma2_eps(catalog_matrix("H16"), 0.25, s), SizeCapExceeded);
}
