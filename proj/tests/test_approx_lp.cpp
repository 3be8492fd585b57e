#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpt/amplification.hpp"
#include "dpt/approx_degree.hpp"
#include "dpt/approximant_oracle.hpp"
#include "dpt/parity_approximant.hpp"
#include "dpt/simplex.hpp"
#include "dpt/univariate.hpp"
#include "dpt/witness.hpp"

using namespace dpt;

namespace {

int weight(std::uint64_t x) { return __builtin_popcountll(x); }
int chi_of(std::uint64_t S, std::uint64_t x) { return weight(S & x) % 2 ? -1 : 1; }

Rational eval(const MultilinearPolynomial& p, std::uint64_t x) {
  Rational s = 0;
  for (const auto& [S, c] : p.coefficients()) s += c * chi_of(S, x);
  return s;
}

// Primal: some degree-d p with |p − f| ≤ ε on the domain and |p| ≤ 1 + ε off it.
bool primal_holds(const PartialBooleanFunction& f, const MultilinearPolynomial& p, const Rational& eps, int d) {
  for (const auto& [S, c] : p.coefficients())
    if (c != 0 && weight(S) > d) return false;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    Rational v = eval(p, x);
    if (f.defined(x) ? abs(v - f.value(x)) > eps : abs(v) > 1 + eps) return false;
  }
  return true;
}

// Dual: ψ ⊥ every χ_S with |S| ≤ d and Σ_dom fψ − Σ_off|ψ| > ε‖ψ‖₁.
bool dual_holds(const PartialBooleanFunction& f, const DualWitness& psi, const Rational& eps, int d) {
  for (std::uint64_t S = 0; S < f.size(); ++S) {
    if (weight(S) > d) continue;
    Rational s = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x) s += psi[x] * chi_of(S, x);
    if (s != 0) return false;
  }
  Rational corr = 0, l1 = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    l1 += abs(psi[x]);
    corr += f.defined(x) ? Rational(f.value(x) * psi[x]) : Rational(-abs(psi[x]));
  }
  return corr > eps * l1;
}

}  // namespace

TEST_CASE("simplex solves small programs exactly") {
  lp::LinearProgram prog;
  auto x = prog.add_variable(), y = prog.add_variable();
  prog.add_constraint({{x, 1}, {y, 2}}, lp::Sense::le, 4);
  prog.add_constraint({{x, 3}, {y, 1}}, lp::Sense::le, 6);
  prog.set_objective({{x, 1}, {y, 1}}, true);
  auto s = lp::solve(prog);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.objective == Rational(14, 5));
  CHECK(s.values[x] == Rational(8, 5));
  CHECK(s.values[y] == Rational(6, 5));
  CHECK(s.duals[0] * 4 + s.duals[1] * 6 == s.objective);

  lp::LinearProgram bad;
  auto z = bad.add_variable();
  bad.add_constraint({{z, 1}}, lp::Sense::ge, 2);
  bad.add_constraint({{z, 1}}, lp::Sense::le, 1);
  bad.set_objective({{z, 1}}, true);
  CHECK(lp::solve(bad).status == lp::Status::infeasible);

  lp::LinearProgram open;
  auto w = open.add_variable(true);
  open.add_constraint({{w, 1}}, lp::Sense::ge, -3);
  open.set_objective({{w, 1}}, true);
  CHECK(lp::solve(open).status == lp::Status::unbounded);
  open.set_objective({{w, 1}}, false);
  auto lo = lp::solve(open);
  REQUIRE(lo.status == lp::Status::optimal);
  CHECK(lo.objective == -3);
}

TEST_CASE("approximate degree is pinned by independently checked certificates") {
  for (const char* name : {"id1", "or2", "and2", "maj3", "parity2", "parity3", "por3", "or4", "maj3", "const1"})
    for (auto eps : {Rational(0), Rational(1, 8), Rational(1, 3), Rational(1, 2), Rational(3, 4)}) {
      CAPTURE(name);
      CAPTURE(to_string(eps));
      auto f = catalog_function(name);
      auto r = approx_degree(f, eps);
      CHECK(r.primal_ok);
      CHECK(r.dual_ok);
      CHECK(primal_holds(f, r.approximant, eps, r.degree));
      if (r.degree > 0) {
        REQUIRE(r.witness.has_value());
        CHECK(dual_holds(f, *r.witness, eps, r.degree - 1));
        CHECK(r.witness->l1_norm() == 1);
      }
    }
}

TEST_CASE("closed-form degrees") {
  for (int n = 1; n <= 4; ++n)
    for (auto eps : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(3, 4)})
      CHECK(approx_degree(parity_function(n), eps).degree == n);
  CHECK(approx_degree(constant_function(3, 1), Rational(1, 3)).degree == 0);
  CHECK(approx_degree(catalog_function("id1"), Rational(1, 2)).degree == 1);
  auto t = threshold_degree(majority_function(3));
  CHECK(t.degree == 1);
  CHECK(t.primal_ok);
  CHECK(t.dual_ok);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(majority_function(3).value(x) * eval(t.representation, x) >= 1);
  CHECK(threshold_degree(parity_function(3)).degree == 3);
}

TEST_CASE("degree is nonincreasing in the error") {
  const std::vector<Rational> grid{0, Rational(1, 10), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                   Rational(9, 10)};
  for (const auto& name : catalog_function_names()) {
    auto f = catalog_function(name);
    if (f.num_vars() > 4) continue;
    int prev = 1 << 20;
    for (const auto& e : grid) {
      int d = approx_degree(f, e).degree;
      CHECK(d <= prev);
      prev = d;
    }
  }
}

TEST_CASE("best approximation error decreases to zero at full degree") {
  auto f = majority_function(3);
  Rational prev = 2;
  for (int d = 0; d <= 3; ++d) {
    auto s = best_approximation(f, d);
    CHECK(s.error <= prev);
    prev = s.error;
  }
  CHECK(prev == 0);
}

TEST_CASE("univariate polynomials") {
  UnivariatePolynomial p({Rational(-1), Rational(0), Rational(1)});
  CHECK(p(Rational(3)) == 8);
  CHECK(p.derivative()(Rational(2)) == 4);
  CHECK((p * p)(Rational(2)) == 9);
  CHECK(count_roots(p, Rational(-2), Rational(2)) == 2);
  CHECK(nonnegative_on(p, Rational(1), Rational(5)));
  CHECK(!nonnegative_on(p, Rational(0), Rational(5)));
}

TEST_CASE("parity approximants") {
  for (int n = 1; n <= 6; ++n) {
    auto exact = parity_approximant(n, n, n, ParityMethod::lp);
    CHECK(exact.delta == 0);
    for (int i = 0; i <= n; ++i) CHECK(parity_interpolant(n)(Rational(i)) == (i % 2 ? -1 : 1));
    for (int ell = 0; ell <= n; ++ell)
      for (int m = 0; m <= n; ++m) {
        auto q = parity_approximant(n, m, ell, ParityMethod::lp);
        CHECK(q.Q.degree() <= ell);
        Rational d = 0;
        for (int i = 0; i <= n; ++i) {
          Rational target = i <= m ? Rational(i % 2 ? -1 : 1) : Rational(0);
          d = std::max(d, Rational(abs(q.Q(Rational(i)) - target)));
        }
        CHECK(q.delta == d);
      }
  }
  auto k = parity_approximant(6, 0, 4, ParityMethod::closed_form);
  CHECK(k.Q(Rational(0)) == 1);
  for (int t : {1, 2, 5, 6}) CHECK(k.Q(Rational(t)) == 0);
  CHECK_THROWS(parity_approximant(6, 1, 4, ParityMethod::closed_form));
}

TEST_CASE("symmetrization evaluates Q at the weight") {
  for (int n = 2; n <= 6; ++n) {
    auto q = parity_approximant(n, 0, n / 2, ParityMethod::lp);
    auto s = symmetrize_to_cube(q.Q, n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) CHECK(s.q.evaluate(x) == q.Q(Rational(weight(x))));
    if (s.bounded) CHECK(s.fourier_l1 * s.fourier_l1 <= Rational(s.prefix_binomial));
  }
}

TEST_CASE("approximant oracle") {
  std::vector<PartialBooleanFunction> gs{catalog_function("id1"), catalog_function("id1")};
  CHECK(is_approximant(gs, indicator_system(gs), {1, 0}));
  auto r = approximant_degree_oracle(gs, {Rational(1, 2), 0});
  CHECK(r.degree >= 1);
  CHECK(is_approximant(gs, r.system, {Rational(1, 2), 0}));
  CHECK(r.success >= Rational(1, 2));
  CHECK(r.success_below < Rational(1, 2));
  CHECK(approximant_degree_oracle(gs, {Rational(1, 4), 2}).degree == 0);
}

TEST_CASE("amplification polynomials map the constrained intervals") {
  auto r = amplification_poly(AmplificationKind::entry_reduction, Rational(1, 8));
  CHECK(r.exact_ok);
  for (const auto& c : r.constraints)
    for (int i = 0; i <= 64; ++i) {
      Rational t = c.lo + (c.hi - c.lo) * Rational(i, 64);
      Rational v = r.poly(t);
      CHECK(v >= c.lower);
      CHECK(v <= c.upper);
    }
}
