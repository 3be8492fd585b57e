#include "dpt/gamma2.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dpt/amplification.hpp"
#include "dpt/sdp.hpp"

namespace dpt {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check_size(Eigen::Index r, Eigen::Index c, const NormSettings& s) {
  if (r < 1 || c < 1) throw std::invalid_argument("empty matrix");
  if (r > s.max_dim || c > s.max_dim) throw SizeCapExceeded("matrix exceeds the configured size cap");
}

// V with V·Vᵀ = max(S, 0) after clipping negative eigenvalues.
MatrixXd psd_factor(const MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (S + S.transpose()));
  VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = ev[i] < 0 ? 0 : std::sqrt(ev[i]);
  return es.eigenvectors() * ev.asDiagonal();
}

double trace_norm(const MatrixXd& m) {
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues().sum();
}

double max_row_norm(const MatrixXd& m) {
  double best = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).norm());
  return best;
}

sdp::Options options(const NormSettings& s) {
  sdp::Options o;
  o.tolerance = s.sdp_tolerance;
  return o;
}

void finish(NormCertificate& c, double estimate) {
  c.lower = std::max(0.0, c.lower);
  if (c.upper < c.lower) c.upper = c.lower;
  c.value = std::clamp(estimate, c.lower, c.upper);
  c.gap = c.upper - c.lower;
}

}  // namespace

double max_abs(const MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

NormCertificate gamma2(const MatrixXd& m, const NormSettings& s) {
  check_size(m.rows(), m.cols(), s);
  const int r = static_cast<int>(m.rows()), c = static_cast<int>(m.cols()), n = r + c;
  sdp::Problem p;
  p.blocks = {{n, false}};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (m(i, j) != 0) p.C.push_back({0, i, r + j, m(i, j)});
  std::vector<sdp::Entry> tr;
  for (int k = 0; k < n; ++k) tr.push_back({0, k, k, 1});
  p.add_constraint(std::move(tr), 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((i < r) == (j < r)) p.add_constraint({{0, i, j, 0.5}}, 0);
  auto res = sdp::solve(p, options(s));

  NormCertificate cert;
  cert.converged = res.converged;
  MatrixXd V = psd_factor(res.Z[0]);
  cert.factor_rows = V.topRows(r);
  cert.factor_cols = -V.bottomRows(c).transpose();
  MatrixXd prod = cert.factor_rows * cert.factor_cols;
  cert.perturbation = m - prod;
  cert.residual = max_abs(cert.perturbation);
  cert.upper = max_row_norm(cert.factor_rows) * max_row_norm(cert.factor_cols.transpose());
  VectorXd a = res.X[0].diagonal().head(r).cwiseMax(0).cwiseSqrt();
  VectorXd b = res.X[0].diagonal().tail(c).cwiseMax(0).cwiseSqrt();
  if (a.norm() > 0 && b.norm() > 0) {
    a /= a.norm();
    b /= b.norm();
    cert.lower = trace_norm(a.asDiagonal() * m * b.asDiagonal());
  }
  cert.dual = res.Z[0];
  finish(cert, res.dual_objective);
  return cert;
}

NormCertificate gamma2_dual(const MatrixXd& m, const NormSettings& s) {
  check_size(m.rows(), m.cols(), s);
  const int r = static_cast<int>(m.rows()), c = static_cast<int>(m.cols()), n = r + c;
  sdp::Problem p;
  p.blocks = {{n, false}};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (m(i, j) != 0) p.C.push_back({0, i, r + j, m(i, j) / 2});
  for (int k = 0; k < n; ++k) p.add_constraint({{0, k, k, 1}}, 1);
  auto res = sdp::solve(p, options(s));

  NormCertificate cert;
  cert.converged = res.converged;
  MatrixXd V = psd_factor(res.X[0]);
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    double nn = V.row(i).norm();
    if (nn > 0) V.row(i) /= nn;
    else V(i, 0) = 1;
  }
  cert.factor_rows = V.topRows(r);
  cert.factor_cols = V.bottomRows(c).transpose();
  cert.lower = m.cwiseProduct(cert.factor_rows * cert.factor_cols).sum();
  MatrixXd Z = res.y.asDiagonal();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      Z(i, r + j) -= m(i, j) / 2;
      Z(r + j, i) -= m(i, j) / 2;
    }
  double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(Z, Eigen::EigenvaluesOnly).eigenvalues()(0);
  cert.upper = res.y.sum() + n * std::max(0.0, -lmin);
  cert.perturbation = MatrixXd::Zero(r, c);
  cert.dual = res.y;
  finish(cert, res.dual_objective);
  return cert;
}

NormCertificate gamma2_eps(const PartialSignMatrix& f, double eps, const NormSettings& s) {
  if (!(eps >= 0)) throw std::invalid_argument("eps must be nonnegative");
  check_size(f.rows(), f.cols(), s);
  const int r = f.rows(), c = f.cols(), n = r + c;
  if (eps == 0 && f.is_total()) return gamma2(f.to_real(), s);

  // Free entries get an LP pair (a − lo ≥ 0, hi − a ≥ 0); entries with lo = hi are fixed.
  std::vector<std::pair<int, int>> free_entries;
  sdp::Problem p;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      int v = f.at(i, j);
      if (v != 0 && eps == 0) p.C.push_back({0, i, r + j, static_cast<double>(v)});
      else free_entries.emplace_back(i, j);
    }
  p.blocks = {{n, false}};
  if (!free_entries.empty()) p.blocks.push_back({2 * static_cast<int>(free_entries.size()), true});
  std::vector<sdp::Entry> tr;
  for (int k = 0; k < n; ++k) tr.push_back({0, k, k, 1});
  p.add_constraint(std::move(tr), 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((i < r) == (j < r)) p.add_constraint({{0, i, j, 0.5}}, 0);
  std::vector<double> lo(free_entries.size()), hi(free_entries.size());
  for (std::size_t e = 0; e < free_entries.size(); ++e) {
    auto [i, j] = free_entries[e];
    int v = f.at(i, j);
    lo[e] = v == 0 ? -(1 + eps) : v - eps;
    hi[e] = v == 0 ? 1 + eps : v + eps;
    int k = static_cast<int>(2 * e);
    p.add_constraint({{0, i, r + j, -1}, {1, k, k, 1}, {1, k + 1, k + 1, -1}}, 0);
    if (lo[e] != 0) p.C.push_back({1, k, k, lo[e]});
    if (hi[e] != 0) p.C.push_back({1, k + 1, k + 1, -hi[e]});
  }
  auto res = sdp::solve(p, options(s));

  NormCertificate cert;
  cert.converged = res.converged;
  MatrixXd V = psd_factor(res.Z[0]);
  cert.factor_rows = V.topRows(r);
  cert.factor_cols = -V.bottomRows(c).transpose();
  MatrixXd prod = cert.factor_rows * cert.factor_cols;
  cert.perturbation = MatrixXd::Zero(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      int v = f.at(i, j);
      double lo_ij = v == 0 ? -(1 + eps) : v - eps, hi_ij = v == 0 ? 1 + eps : v + eps;
      cert.residual = std::max({cert.residual, lo_ij - prod(i, j), prod(i, j) - hi_ij});
      if (v != 0) cert.perturbation(i, j) = v - prod(i, j);
    }
  cert.upper = max_row_norm(cert.factor_rows) * max_row_norm(cert.factor_cols.transpose());

  MatrixXd psi = 2 * res.X[0].block(0, r, r, c);
  double numer = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      int v = f.at(i, j);
      numer += v == 0 ? -std::fabs(psi(i, j)) : v * psi(i, j);
      numer -= eps * std::fabs(psi(i, j));
    }
  cert.dual = psi;
  if (numer > 0 && max_abs(psi) > 0) {
    NormCertificate star = gamma2_dual(psi, s);
    cert.lower = numer / star.upper;
  }
  finish(cert, res.dual_objective);
  return cert;
}

double gdm_bound(const PartialSignMatrix& f, const Rational& eps, const NormSettings& s) {
  if (eps <= 0 || eps >= Rational(1, 2)) throw std::invalid_argument("gdm needs 0 < eps < 1/2");
  double e = to_double(eps / (1 - eps));
  double g = gamma2_eps(f, e, s).value;
  if (g <= 0) return 0;
  double v = f.is_total() ? 0.25 * std::log2(g) : std::log2(g) - 3;
  return std::max(0.0, v);
}

ErrorReduction gamma2_error_reduce(const PartialSignMatrix& f, const Rational& eps, const NormSettings& s) {
  if (!f.is_total()) throw std::invalid_argument("error reduction needs a total matrix");
  if (eps <= 0 || eps > Rational(1, 4)) throw std::invalid_argument("error reduction needs 0 < eps <= 1/4");
  if (f.rank() < 2) throw std::invalid_argument("rank-1 matrices are handled separately");
  NormCertificate q = gamma2_eps(f, 0.25, s);
  ErrorReduction out;
  out.gamma2_quarter = q.upper;
  out.poly = amplification_poly(AmplificationKind::entry_reduction, eps).poly;
  MatrixXd A = q.factor_rows * q.factor_cols;
  MatrixXd power = A, B = MatrixXd::Zero(A.rows(), A.cols());
  double g = q.upper, gp = g;
  for (int i = 1; i <= out.poly.degree(); ++i) {
    double a = to_double(out.poly.coefficient(i));
    B += a * power;
    out.bound += std::fabs(a) * gp;
    power = power.cwiseProduct(A);
    gp *= g;
  }
  out.max_error = max_abs(f.to_real() - B);
  out.within = out.max_error <= to_double(eps) + 1e-7;
  return out;
}

namespace {

MatrixXd random_matrix(std::mt19937_64& rng, int r, int c) {
  MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2 - 1;
  return m;
}

MatrixXd random_sign(std::mt19937_64& rng, int r, int c) {
  MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = (rng() >> 63) ? 1.0 : -1.0;
  return m;
}

}  // namespace

std::vector<NormPropertyCheck> gamma2_property_suite(unsigned long long seed, const NormSettings& s) {
  std::mt19937_64 rng(seed);
  std::vector<NormPropertyCheck> out;
  auto push = [&](std::string item, std::string inst, double lhs, double rhs, double tol, std::string rel) {
    NormPropertyCheck it{std::move(item), std::move(inst), lhs, rhs, tol, std::move(rel), false};
    it.pass = it.relation == "eq" ? std::fabs(lhs - rhs) <= tol : lhs - rhs >= -tol;
    out.push_back(std::move(it));
  };
  const double slack = 1e-7;
  for (int t = 0; t < 3; ++t) {
    MatrixXd m = random_matrix(rng, 3, 3);
    NormCertificate g = gamma2(m, s);
    std::string inst = "random 3x3 #" + std::to_string(t);

    VectorXd d1(3), d2(3);
    for (int i = 0; i < 3; ++i) {
      d1[i] = (rng() >> 63) ? 1 : -1;
      d2[i] = (rng() >> 63) ? 1 : -1;
    }
    NormCertificate gs = gamma2(d1.asDiagonal() * m * d2.asDiagonal(), s);
    push("sign_scaling", inst, gs.value, g.value, g.gap + gs.gap + slack, "eq");

    NormCertificate sub = gamma2(m.topLeftCorner(2, 3), s);
    push("submatrix", inst, g.value, sub.value, g.gap + sub.gap + slack, "ge");

    MatrixXd dup(4, 3);
    dup << m, m.row(1);
    NormCertificate gd = gamma2(dup, s);
    push("duplication", inst, gd.value, g.value, g.gap + gd.gap + slack, "eq");

    push("max_entry", inst, g.value, max_abs(m), g.gap + slack, "ge");
    push("trace_floor", inst, g.value, classic_matrix_norms(m).trace / 3, g.gap + slack, "ge");

    MatrixXd m2 = random_matrix(rng, 3, 3);
    NormCertificate g2 = gamma2(m2, s);
    NormCertificate gk = gamma2(kron(m, m2), s);
    push("tensor", inst, g.value * g2.value, gk.value, gk.gap + g.gap * g2.upper + g2.gap * g.upper + slack, "ge");
    NormCertificate gh = gamma2(m.cwiseProduct(m2), s);
    push("hadamard_product", inst, g.value * g2.value, gh.value, gh.gap + g.gap * g2.upper + g2.gap * g.upper + slack, "ge");
  }
  {
    MatrixXd h2 = sylvester_hadamard(1).to_real();
    MatrixXd dup(3, 2);
    dup << h2, h2.row(0);
    NormCertificate a = gamma2(h2, s), b = gamma2(dup, s);
    push("duplication", "H2 with a duplicated row", b.value, a.value, a.gap + b.gap + slack, "eq");
    MatrixXd h4 = sylvester_hadamard(2).to_real();
    NormCertificate g4 = gamma2(h4, s);
    push("trace_floor", "H4", g4.value, classic_matrix_norms(h4).trace / 4, g4.gap + slack, "ge");
    push("dual_trace_ceiling", "H4", classic_matrix_norms(h4).trace * 4, gamma2_dual(h4, s).value, slack, "ge");
  }
  for (int t = 0; t < 2; ++t) {
    MatrixXd a = random_sign(rng, 4, 4);
    PartialSignMatrix ps(4, 4, std::vector<int8_t>(16));
    std::vector<int8_t> e(16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) e[i * 4 + j] = static_cast<int8_t>(a(i, j));
    ps = PartialSignMatrix(4, 4, e);
    for (double eps : {0.25, 0.5}) {
      NormCertificate ge = gamma2_eps(ps, eps, s);
      double spectral = classic_matrix_norms(a).spectral;
      push("spectral_floor", "random 4x4 sign #" + std::to_string(t) + " eps=" + std::to_string(eps), ge.value,
           (1 - eps) * 4 / spectral, ge.gap + slack, "ge");
    }
  }
  return out;
}

}  // namespace dpt
