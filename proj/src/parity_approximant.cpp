#include "dpt/parity_approximant.hpp"

#include <stdexcept>

#include "dpt/simplex.hpp"

namespace dpt {

namespace {

// Binomial basis C(t, j) as a monomial-basis polynomial.
UnivariatePolynomial binomial_basis(int j) {
  UnivariatePolynomial p = UnivariatePolynomial::constant(1);
  for (int i = 0; i < j; ++i) p = p * UnivariatePolynomial({Rational(-i, i + 1), Rational(1, i + 1)});
  return p;
}

UnivariatePolynomial lp_approximant(int n, int m, int ell) {
  int deg = std::min(ell, n);
  lp::LinearProgram prog;
  std::size_t b0 = prog.add_variables(deg + 1, true);
  std::size_t delta = prog.add_variable();
  for (int i = 0; i <= n; ++i) {
    std::vector<lp::Term> row;
    for (int j = 0; j <= std::min(deg, i); ++j) row.push_back({b0 + j, Rational(binomial(i, j))});
    Rational target = i <= m ? Rational(i % 2 ? -1 : 1) : Rational(0);
    auto lower = row, upper = row;
    lower.push_back({delta, Rational(1)});
    upper.push_back({delta, Rational(-1)});
    prog.add_constraint(std::move(lower), lp::Sense::ge, target);
    prog.add_constraint(std::move(upper), lp::Sense::le, target);
    prog.add_constraint(row, lp::Sense::le, 1);
    prog.add_constraint(std::move(row), lp::Sense::ge, -1);
  }
  prog.set_objective({{delta, Rational(1)}}, false);
  auto sol = lp::solve(prog);
  if (sol.status != lp::Status::optimal) throw std::logic_error("parity approximant LP failed");
  UnivariatePolynomial Q;
  for (int j = 0; j <= deg; ++j) Q = Q + binomial_basis(j) * sol.values[b0 + j];
  return Q;
}

UnivariatePolynomial closed_form_approximant(int n, int ell) {
  int r = ell / 2;
  UnivariatePolynomial Q = UnivariatePolynomial::constant(
      Rational(1) / Rational(factorial(r) * factorial(r) * binomial(n, r)));
  for (int i = 0; i < r; ++i) {
    Q = Q * UnivariatePolynomial({Rational(-i - 1), Rational(1)});
    Q = Q * UnivariatePolynomial({Rational(i - n), Rational(1)});
  }
  return Q;
}

}  // namespace

Rational achieved_delta(const UnivariatePolynomial& Q, int n, int m) {
  Rational d = 0;
  for (int i = 0; i <= n; ++i) {
    Rational target = i <= m ? Rational(i % 2 ? -1 : 1) : Rational(0);
    Rational gap = abs(Q(Rational(i)) - target);
    if (gap > d) d = gap;
  }
  return d;
}

ParityApproximant parity_approximant(int n, int m, int ell, ParityMethod method) {
  if (n < 1 || m < 0 || m > n || ell < 0) throw std::invalid_argument("parity approximant parameters out of range");
  ParityApproximant out;
  out.n = n;
  out.m = m;
  out.ell = ell;
  if (method == ParityMethod::closed_form) {
    if (m != 0) throw std::invalid_argument("closed form needs m = 0");
    if (ell > n) throw std::invalid_argument("closed form needs ell <= n");
    out.Q = closed_form_approximant(n, ell);
  } else {
    out.Q = lp_approximant(n, m, ell);
  }
  out.delta = achieved_delta(out.Q, n, m);
  out.bounded = true;
  for (int i = 0; i <= n; ++i) out.bounded = out.bounded && abs(out.Q(Rational(i))) <= 1;
  return out;
}

UnivariatePolynomial parity_interpolant(int n) {
  UnivariatePolynomial Q;
  // (−1)^t = Σ_j (−2)^j C(t, j) on the integers.
  Rational c = 1;
  for (int j = 0; j <= n; ++j) {
    Q = Q + binomial_basis(j) * c;
    c *= -2;
  }
  return Q;
}

std::vector<Rational> levels_of(const UnivariatePolynomial& Q, int n) {
  std::vector<Rational> lv(n + 1);
  for (int i = 0; i <= n; ++i) lv[i] = Q(Rational(i));
  return lv;
}

SymmetrizedPolynomial symmetrize_to_cube(const UnivariatePolynomial& Q, int n) {
  if (Q.degree() > n) throw std::invalid_argument("degree exceeds the number of variables");
  SymmetrizedPolynomial out;
  auto lv = levels_of(Q, n);
  out.q = symmetric_to_multilinear(lv);
  out.fourier_l1 = symmetric_fourier_l1(lv);
  out.prefix_binomial = binomial_prefix(n, Q.degree());
  out.bounded = true;
  for (auto& v : lv) out.bounded = out.bounded && abs(v) <= 1;
  out.l1_bound_ok = out.fourier_l1 * out.fourier_l1 <= Rational(out.prefix_binomial);
  return out;
}

}  // namespace dpt
