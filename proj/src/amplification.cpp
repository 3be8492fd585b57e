#include "dpt/amplification.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dpt/simplex.hpp"

namespace dpt {

namespace {

const Rational kWiden(1, 4096);

std::vector<Rational> dyadic_grid(const Rational& lo, const Rational& hi) {
  std::vector<Rational> pts;
  Integer start = ceil(lo * 256), stop = floor(hi * 256);
  for (Integer k = start; k <= stop; ++k) pts.emplace_back(k, 256);
  pts.push_back(lo);
  pts.push_back(hi);
  return pts;
}

std::vector<IntervalConstraint> mirrored(const std::vector<IntervalConstraint>& cs) {
  std::vector<IntervalConstraint> all = cs;
  for (auto& c : cs) all.push_back({-c.hi, -c.lo, -c.upper, -c.lower});
  return all;
}

struct Synthesis {
  std::vector<Rational> coeffs;
  Rational margin;
};

// Maximize τ with lower+τ ≤ p(t) ≤ upper−τ at every grid point; p odd of degree d.
Synthesis synthesize(int d, const std::vector<std::pair<Rational, const IntervalConstraint*>>& grid) {
  lp::LinearProgram prog;
  int terms = (d + 1) / 2;
  std::size_t c0 = prog.add_variables(terms, true);
  std::size_t tau = prog.add_variable(true);
  for (auto& [t, c] : grid) {
    std::vector<lp::Term> row;
    Rational t2 = t * t, power = t;
    for (int j = 0; j < terms; ++j) {
      row.push_back({c0 + j, power});
      power *= t2;
    }
    auto lower = row, upper = row;
    lower.push_back({tau, Rational(-1)});
    upper.push_back({tau, Rational(1)});
    prog.add_constraint(std::move(lower), lp::Sense::ge, c->lower);
    prog.add_constraint(std::move(upper), lp::Sense::le, c->upper);
  }
  prog.add_constraint({{tau, Rational(1)}}, lp::Sense::le, 1);
  prog.set_objective({{tau, Rational(1)}}, true);
  auto sol = lp::solve(prog);
  if (sol.status != lp::Status::optimal) throw std::logic_error("amplification LP failed");
  Synthesis s;
  s.coeffs.assign(d + 1, Rational(0));
  for (int j = 0; j < terms; ++j) s.coeffs[2 * j + 1] = sol.values[c0 + j];
  s.margin = sol.values[tau];
  return s;
}

}  // namespace

std::vector<IntervalConstraint> amplification_constraints(AmplificationKind kind, const Rational& eps) {
  switch (kind) {
    case AmplificationKind::error_reduction:
      if (eps <= 0 || eps > Rational(1, 3)) throw std::invalid_argument("error_reduction needs 0 < eps <= 1/3");
      return {{Rational(2, 3), Rational(4, 3), 1 - eps, 1 + eps}, {Rational(0), Rational(4, 3), -1 - eps, 1 + eps}};
    case AmplificationKind::sign_amplify:
      if (eps <= 0 || eps > Rational(2, 3)) throw std::invalid_argument("sign_amplify needs 0 < eps <= 2/3");
      return {{eps, Rational(1), Rational(2, 3), Rational(1)}, {Rational(0), Rational(1), Rational(-1), Rational(1)}};
    case AmplificationKind::entry_reduction:
      if (eps <= 0 || eps >= 1) throw std::invalid_argument("entry_reduction needs 0 < eps < 1");
      return {{Rational(3, 4) - kWiden, Rational(5, 4) + kWiden, 1 - eps, 1 + eps}};
  }
  throw std::invalid_argument("unknown amplification kind");
}

bool verify_containment(const UnivariatePolynomial& p, const std::vector<IntervalConstraint>& cs, bool* grid_ok) {
  auto all = mirrored(cs);
  bool grid = true;
  for (auto& c : all)
    for (auto& t : dyadic_grid(c.lo, c.hi)) {
      Rational v = p(t);
      if (v < c.lower || v > c.upper) grid = false;
    }
  if (grid_ok) *grid_ok = grid;
  if (!grid) return false;
  for (auto& c : all) {
    if (!nonnegative_on(UnivariatePolynomial::constant(c.upper) - p, c.lo, c.hi)) return false;
    if (!nonnegative_on(p - UnivariatePolynomial::constant(c.lower), c.lo, c.hi)) return false;
  }
  return true;
}

AmplificationResult amplification_poly(AmplificationKind kind, const Rational& eps, int max_degree) {
  AmplificationResult res;
  res.constraints = amplification_constraints(kind, eps);
  for (int d = 1; d <= max_degree; d += 2) {
    std::vector<std::pair<Rational, const IntervalConstraint*>> grid;
    const int steps = std::max(8, 2 * d);
    for (auto& c : res.constraints)
      for (int i = 0; i <= steps; ++i) grid.emplace_back(c.lo + (c.hi - c.lo) * make_rational(i, steps), &c);
    for (int round = 0; round < 12; ++round) {
      auto syn = synthesize(d, grid);
      if (syn.margin < 0) break;
      UnivariatePolynomial p(syn.coeffs);
      bool grid_ok = false;
      if (verify_containment(p, res.constraints, &grid_ok)) {
        res.poly = p;
        res.grid_ok = grid_ok;
        res.exact_ok = true;
        Rational lo = res.constraints[0].lo, hi = res.constraints[0].hi;
        for (auto& c : res.constraints) {
          lo = std::min(lo, c.lo);
          hi = std::max(hi, c.hi);
        }
        auto dp = p.derivative();
        if (!dp.is_zero()) res.critical_points = isolate_roots(dp, -hi - 1, hi, Rational(1, 1 << 30));
        return res;
      }
      // Cutting planes: add the worst offenders on the dyadic grid and near critical points.
      std::set<Rational> have;
      for (auto& g : grid) have.insert(g.first);
      std::size_t before = grid.size();
      for (auto& c : res.constraints) {
        std::vector<Rational> candidates = dyadic_grid(c.lo, c.hi);
        auto dp = p.derivative();
        if (!dp.is_zero())
          for (auto& iv : isolate_roots(dp, c.lo, c.hi, Rational(1, 1 << 20))) candidates.push_back(iv.second);
        for (auto& t : candidates) {
          if (t < c.lo || t > c.hi || have.count(t)) continue;
          Rational v = p(t);
          if (v < c.lower + syn.margin || v > c.upper - syn.margin) {
            grid.emplace_back(t, &c);
            have.insert(t);
          }
        }
      }
      if (grid.size() == before) break;
    }
  }
  throw std::runtime_error("no amplification polynomial found within the degree limit");
}

}  // namespace dpt
