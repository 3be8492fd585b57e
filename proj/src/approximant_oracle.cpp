#include "dpt/approximant_oracle.hpp"

#include <stdexcept>

#include "dpt/simplex.hpp"

namespace dpt {

namespace {

int total_vars(std::span<const PartialBooleanFunction> gs) {
  int t = 0;
  for (auto& g : gs) t += g.num_vars();
  return t;
}

}  // namespace

bool answer_vector(std::span<const PartialBooleanFunction> gs, std::uint64_t x, std::uint64_t* z) {
  std::uint64_t out = 0;
  int offset = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    int v = gs[i].value((x >> offset) & (gs[i].size() - 1));
    offset += gs[i].num_vars();
    if (v == 0) return false;
    if (v < 0) out |= std::uint64_t{1} << i;
  }
  *z = out;
  return true;
}

Rational approximant_success(std::span<const PartialBooleanFunction> gs, int m, int D, ApproximantSystem* out) {
  const int n = static_cast<int>(gs.size());
  const int M = total_vars(gs);
  const std::uint64_t N = std::uint64_t{1} << M, Z = std::uint64_t{1} << n;
  lp::LinearProgram prog;
  std::size_t u0 = prog.add_variables(Z * N), v0 = prog.add_variables(Z * N);
  std::size_t s = prog.add_variable(true);
  auto u = [&](std::uint64_t z, std::uint64_t x) { return u0 + z * N + x; };
  auto v = [&](std::uint64_t z, std::uint64_t x) { return v0 + z * N + x; };
  for (std::uint64_t x = 0; x < N; ++x) {
    std::vector<lp::Term> row;
    for (std::uint64_t z = 0; z < Z; ++z) {
      row.push_back({u(z, x), Rational(1)});
      row.push_back({v(z, x), Rational(1)});
    }
    prog.add_constraint(std::move(row), lp::Sense::le, 1);
  }
  for (std::uint64_t z = 0; z < Z; ++z)
    for (std::uint64_t S = 0; S < N; ++S) {
      if (popcount(S) <= D) continue;
      std::vector<lp::Term> row;
      for (std::uint64_t x = 0; x < N; ++x) {
        int c = chi(S, x);
        row.push_back({u(z, x), Rational(c)});
        row.push_back({v(z, x), Rational(-c)});
      }
      prog.add_constraint(std::move(row), lp::Sense::eq, 0);
    }
  for (std::uint64_t x = 0; x < N; ++x) {
    std::uint64_t a;
    if (!answer_vector(gs, x, &a)) continue;
    std::vector<lp::Term> row{{s, Rational(-1)}};
    for (std::uint64_t w = 0; w < Z; ++w) {
      if (popcount(w) > m) continue;
      row.push_back({u(w ^ a, x), Rational(1)});
      row.push_back({v(w ^ a, x), Rational(-1)});
    }
    prog.add_constraint(std::move(row), lp::Sense::ge, 0);
  }
  prog.add_constraint({{s, Rational(1)}}, lp::Sense::le, 1);
  prog.set_objective({{s, Rational(1)}}, true);
  auto sol = lp::solve(prog);
  if (sol.status != lp::Status::optimal) throw std::logic_error("approximant LP failed");
  if (out) {
    out->num_vars = M;
    out->phi.assign(Z, std::vector<Rational>(N));
    for (std::uint64_t z = 0; z < Z; ++z)
      for (std::uint64_t x = 0; x < N; ++x) out->phi[z][x] = sol.values[u(z, x)] - sol.values[v(z, x)];
  }
  return sol.values[s];
}

ApproximantDegreeResult approximant_degree_oracle(std::span<const PartialBooleanFunction> gs,
                                                  const ApproximantSpec& spec, std::uint64_t max_size) {
  const int n = static_cast<int>(gs.size());
  if (n < 1) throw std::invalid_argument("need at least one function");
  if (spec.m < 0 || spec.m > n) throw std::invalid_argument("slack m out of range");
  if (spec.sigma <= 0 || spec.sigma > 1) throw std::invalid_argument("sigma must lie in (0,1]");
  const int M = total_vars(gs);
  if (M > 20 || (std::uint64_t{1} << (M + n)) > max_size) throw std::length_error("instance too large for the oracle LP");
  int lo = 0, hi = M;
  ApproximantSystem best;
  Rational best_s = approximant_success(gs, spec.m, hi, &best);
  if (best_s < spec.sigma) throw std::logic_error("full-degree approximant falls short of sigma");
  Rational below = -1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    ApproximantSystem sys;
    Rational s = approximant_success(gs, spec.m, mid, &sys);
    if (s >= spec.sigma) {
      hi = mid;
      best = std::move(sys);
      best_s = s;
    } else {
      lo = mid + 1;
    }
  }
  ApproximantDegreeResult res;
  res.degree = hi;
  res.success = best_s;
  res.system = std::move(best);
  if (hi > 0) res.success_below = approximant_success(gs, spec.m, hi - 1, nullptr);
  return res;
}

bool is_approximant(std::span<const PartialBooleanFunction> gs, const ApproximantSystem& sys,
                    const ApproximantSpec& spec) {
  const std::uint64_t N = std::uint64_t{1} << sys.num_vars, Z = sys.phi.size();
  if (Z != (std::uint64_t{1} << gs.size())) return false;
  for (std::uint64_t x = 0; x < N; ++x) {
    Rational mass = 0;
    for (std::uint64_t z = 0; z < Z; ++z) mass += abs(sys.phi[z][x]);
    if (mass > 1) return false;
    std::uint64_t a;
    if (!answer_vector(gs, x, &a)) continue;
    Rational hit = 0;
    for (std::uint64_t w = 0; w < Z; ++w)
      if (popcount(w) <= spec.m) hit += sys.phi[w ^ a][x];
    if (hit < spec.sigma) return false;
  }
  return true;
}

}  // namespace dpt
