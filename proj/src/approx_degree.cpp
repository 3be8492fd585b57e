#include "dpt/approx_degree.hpp"

#include <stdexcept>

#include "dpt/simplex.hpp"

namespace dpt {

namespace {

std::vector<std::uint64_t> monomials_up_to(int n, int d) {
  std::vector<std::uint64_t> out;
  for (int w = 0; w <= d && w <= n; ++w)
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
      if (popcount(s) == w) out.push_back(s);
  return out;
}

}  // namespace

DegreeLpSolution best_approximation(const PartialBooleanFunction& f, int d) {
  const int n = f.num_vars();
  const std::uint64_t N = f.size();
  auto mons = monomials_up_to(n, d);
  lp::LinearProgram prog;
  std::size_t a0 = prog.add_variables(N);
  std::size_t b0 = prog.add_variables(N);
  for (std::uint64_t s : mons) {
    std::vector<lp::Term> terms;
    terms.reserve(2 * N);
    for (std::uint64_t x = 0; x < N; ++x) {
      int c = chi(s, x);
      terms.push_back({a0 + x, Rational(c)});
      terms.push_back({b0 + x, Rational(-c)});
    }
    prog.add_constraint(std::move(terms), lp::Sense::eq, 0);
  }
  std::vector<lp::Term> norm, obj;
  for (std::uint64_t x = 0; x < N; ++x) {
    norm.push_back({a0 + x, Rational(1)});
    norm.push_back({b0 + x, Rational(1)});
    if (f.defined(x)) {
      obj.push_back({a0 + x, Rational(f.value(x))});
      obj.push_back({b0 + x, Rational(-f.value(x))});
    } else {
      obj.push_back({a0 + x, Rational(-1)});
      obj.push_back({b0 + x, Rational(-1)});
    }
  }
  prog.add_constraint(std::move(norm), lp::Sense::eq, 1);
  prog.set_objective(std::move(obj), true);
  auto sol = lp::solve(prog);
  if (sol.status != lp::Status::optimal) throw std::logic_error("degree LP did not reach an optimum");

  DegreeLpSolution out;
  out.degree = d;
  out.error = sol.objective;
  out.approximant = MultilinearPolynomial(n);
  for (std::size_t i = 0; i < mons.size(); ++i) out.approximant.set_coefficient(mons[i], sol.duals[i]);
  std::vector<Rational> psi(N);
  bool nonzero = false;
  for (std::uint64_t x = 0; x < N; ++x) {
    psi[x] = sol.values[a0 + x] - sol.values[b0 + x];
    nonzero = nonzero || psi[x] != 0;
  }
  if (nonzero) out.witness = DualWitness(n, std::move(psi)).normalized();
  return out;
}

bool verify_approximant(const MultilinearPolynomial& p, const PartialBooleanFunction& f, const Rational& eps) {
  if (p.num_vars() != f.num_vars()) return false;
  auto table = p.to_table();
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (f.defined(x)) {
      if (abs(table[x] - f.value(x)) > eps) return false;
    } else if (abs(table[x]) > 1 + eps) {
      return false;
    }
  }
  return true;
}

WitnessReport verify_dual_witness(const DualWitness& psi, const PartialBooleanFunction& f, const Rational& eps,
                                  int d) {
  WitnessReport rep;
  rep.l1 = psi.l1_norm();
  if (psi.size() != f.size()) return rep;
  Rational on_domain = 0, off_domain = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (f.defined(x)) on_domain += f.value(x) * psi[x];
    else off_domain += abs(psi[x]);
  }
  rep.correlation = on_domain - off_domain;
  rep.correlation_ok = rep.correlation > eps * rep.l1;
  rep.orthogonality_ok = psi.order() > d;
  rep.weak_correlation_ok = on_domain > (1 + eps) / 2 * rep.l1;
  return rep;
}

ApproxDegreeResult approx_degree(const PartialBooleanFunction& f, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("error parameter must be nonnegative");
  ApproxDegreeResult res;
  res.epsilon = eps;
  std::optional<DegreeLpSolution> previous;
  for (int d = 0; d <= f.num_vars(); ++d) {
    auto cur = best_approximation(f, d);
    if (cur.error <= eps) {
      res.degree = d;
      res.approximant = cur.approximant;
      res.approximant_error = cur.error;
      res.primal_ok = res.approximant.degree() <= d && verify_approximant(res.approximant, f, eps);
      if (d == 0) {
        res.dual_ok = true;
      } else {
        res.witness = previous->witness;
        res.dual_ok = res.witness && verify_dual_witness(*res.witness, f, eps, d - 1).pass();
      }
      return res;
    }
    previous = std::move(cur);
  }
  throw std::logic_error("no approximant found up to full degree");
}

ThresholdDegreeResult threshold_degree(const PartialBooleanFunction& f) {
  if (!f.is_total()) throw std::invalid_argument("threshold degree needs a total function");
  ThresholdDegreeResult res;
  std::optional<DegreeLpSolution> previous;
  for (int d = 0; d <= f.num_vars(); ++d) {
    auto cur = best_approximation(f, d);
    if (cur.error < 1) {
      res.degree = d;
      res.representation = cur.approximant * Rational(1 / (1 - cur.error));
      auto table = res.representation.to_table();
      res.primal_ok = res.representation.degree() <= d;
      for (std::uint64_t x = 0; x < f.size(); ++x) res.primal_ok = res.primal_ok && f.value(x) * table[x] >= 1;
      if (d == 0) {
        res.dual_ok = true;
      } else {
        res.witness = previous->witness;
        bool ok = res.witness && res.witness->order() >= d && res.witness->l1_norm() > 0;
        for (std::uint64_t x = 0; ok && x < f.size(); ++x) ok = f.value(x) * (*res.witness)[x] >= 0;
        res.dual_ok = ok;
      }
      return res;
    }
    previous = std::move(cur);
  }
  throw std::logic_error("no sign representation found up to full degree");
}

}  // namespace dpt
