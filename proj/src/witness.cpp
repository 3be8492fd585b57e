#include "dpt/witness.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "dpt/distribution.hpp"
#include "dpt/parity_approximant.hpp"

namespace dpt {

namespace {

constexpr int kMaxJointBits = 20;
constexpr int kMaxExpandedVars = 16;

int sign_of(const Rational& v) { return sgn(v) > 0 ? 1 : (sgn(v) < 0 ? -1 : 0); }

struct Layout {
  std::vector<int> offsets;
  std::vector<int> sizes;
  int total = 0;

  std::uint64_t part(std::uint64_t x, std::size_t i) const {
    return (x >> offsets[i]) & ((std::uint64_t{1} << sizes[i]) - 1);
  }
};

template <typename T>
Layout layout_of(std::span<const T> items) {
  Layout l;
  for (const auto& it : items) {
    l.offsets.push_back(l.total);
    l.sizes.push_back(it.num_vars());
    l.total += it.num_vars();
  }
  if (l.total > kMaxJointBits) throw WitnessError("joint domain too large", -1);
  return l;
}

// Sum of the `count` smallest entries; 0 when count ≤ 0.
int smallest_sum(std::vector<int> v, int count) {
  if (count <= 0) return 0;
  std::sort(v.begin(), v.end());
  int s = 0;
  for (int i = 0; i < count && i < static_cast<int>(v.size()); ++i) s += v[i];
  return s;
}

Rational power(const Rational& base, int e) { return pow(base, e); }

}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::eq: return "==";
    case Relation::le: return "<=";
    case Relation::lt: return "<";
    case Relation::ge: return ">=";
    case Relation::gt: return ">";
  }
  return "?";
}

ExactCheck make_check(std::string name, Rational lhs, Rational rhs, Relation relation) {
  bool pass = false;
  switch (relation) {
    case Relation::eq: pass = lhs == rhs; break;
    case Relation::le: pass = lhs <= rhs; break;
    case Relation::lt: pass = lhs < rhs; break;
    case Relation::ge: pass = lhs >= rhs; break;
    case Relation::gt: pass = lhs > rhs; break;
  }
  return {std::move(name), std::move(lhs), std::move(rhs), relation, pass};
}

Rational SymmetricFallingPolynomial::at(const std::vector<Rational>& z) const { return symmetric_extension(levels, z); }

Rational SymmetricFallingPolynomial::at_constant(const Rational& t) const {
  return at(std::vector<Rational>(n, t));
}

SymmetricFallingPolynomial pk_poly(int n, int k) {
  if (n < 1 || k < 0 || k > n - 1) throw WitnessError("pk_poly needs 0 <= k <= n-1", -1);
  SymmetricFallingPolynomial p;
  p.n = n;
  p.k = k;
  p.levels.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    Rational v = (k % 2 == 0) ? 1 : -1;
    for (int i = 1; i <= k; ++i) v *= j - i;
    p.levels[j] = v;
  }
  if (n <= kMaxExpandedVars) p.multilinear = symmetric_to_multilinear(p.levels);
  p.fourier_l1 = symmetric_fourier_l1(p.levels);
  Integer kf = factorial(k);
  p.fourier_bound = kf * binomial(n + k, k);

  p.checks.push_back(make_check("p_k(1^n) = k!", p.levels[0], Rational(kf), Relation::eq));
  Rational zeros = 0;
  for (int j = 1; j <= k; ++j) zeros = std::max(zeros, Rational(abs(p.levels[j])));
  p.checks.push_back(make_check("max |p_k(z)| over 1 <= |z| <= k", zeros, 0, Relation::eq));
  Rational identity_gap = 0, bound_slack = 0;
  for (int j = k + 1; j <= n; ++j) {
    Rational a = abs(p.levels[j]);
    Rational exact = Rational(kf * binomial(j - 1, k));
    identity_gap = std::max(identity_gap, Rational(abs(a - exact)));
    Rational bound = Rational(kf * binomial(n, k + 1) * binomial(n - k - 1, j - k - 1)) / Rational(binomial(n, j));
    bound_slack = std::min(bound_slack, Rational(bound - a));
  }
  p.checks.push_back(make_check("|p_k(z)| = k! C(|z|-1,k) for |z| > k", identity_gap, 0, Relation::eq));
  p.checks.push_back(make_check("tail level bound slack", bound_slack, 0, Relation::ge));
  p.checks.push_back(make_check("Fourier l1 <= k! C(n+k,k)", p.fourier_l1, Rational(p.fourier_bound), Relation::le));
  return p;
}

Rational pk_expectation_abs(const SymmetricFallingPolynomial& p, const std::vector<Rational>& etas) {
  if (static_cast<int>(etas.size()) != p.n) throw std::invalid_argument("bias count differs from n");
  auto dist = poisson_binomial(etas);
  Rational s = 0;
  for (int w = 0; w <= p.n; ++w) s += dist[w] * abs(p.levels[w]);
  return s;
}

ExactCheck pk_expectation_bound(const SymmetricFallingPolynomial& p, const std::vector<Rational>& etas) {
  Rational eta = 0, mu1 = 1;
  for (const auto& e : etas) {
    if (e < 0 || e >= 1) throw std::invalid_argument("biases must lie in [0,1)");
    eta = std::max(eta, e);
    mu1 *= 1 - e;
  }
  Rational rhs = Rational(factorial(p.k)) * mu1 *
                 (1 + Rational(binomial(p.n, p.k + 1)) * power(eta, p.k + 1) / power(1 - eta, p.n));
  return make_check("E_mu|p_k| <= k! mu(1^n){1 + C(n,k+1) eta^(k+1)/(1-eta)^n}", pk_expectation_abs(p, etas), rhs,
                    Relation::le);
}

ExactCheck pk_nonnegativity(const SymmetricFallingPolynomial& p, int samples, std::uint64_t seed) {
  Rational least = *std::min_element(p.levels.begin(), p.levels.end());
  std::mt19937_64 rng(seed);
  constexpr long kDen = 1024;
  std::vector<Rational> z(p.n);
  for (int s = 0; s < samples; ++s) {
    for (auto& c : z) c = make_rational(static_cast<long>(rng() % (2 * kDen - 1)) - (kDen - 1), kDen);
    Rational v = p.at(z);
    if (v < least) least = v;
  }
  return make_check("min of p_k over vertices and sampled interior points", least, 0, Relation::ge);
}

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::psi_k: return "psi_k";
    case WitnessKind::phi_ell: return "phi_ell";
    case WitnessKind::zeta: return "zeta";
  }
  return "?";
}

bool CompositeWitness::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExactCheck& c) { return c.pass; });
}

const ExactCheck* CompositeWitness::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

PartialBooleanFunction extend_by_witness(const PartialBooleanFunction& g, const DualWitness& psi) {
  if (g.num_vars() != psi.num_vars()) throw std::invalid_argument("witness and function differ in arity");
  std::vector<int8_t> v(g.size());
  for (std::uint64_t x = 0; x < g.size(); ++x)
    v[x] = static_cast<int8_t>(g.defined(x) ? g.value(x) : (psi[x] >= 0 ? -1 : 1));
  return PartialBooleanFunction(g.num_vars(), std::move(v));
}

Rational correlation(const DualWitness& psi, const PartialBooleanFunction& g) {
  Rational s = 0;
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    if (g.defined(x)) s += g.value(x) * psi[x];
    else s -= abs(psi[x]);
  }
  return s;
}

Rational inner_product(const DualWitness& a, const DualWitness& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tables differ in size");
  Rational s = 0;
  for (std::uint64_t x = 0; x < a.size(); ++x) s += a[x] * b[x];
  return s;
}

Rational psi_k_advantage(const CompositeWitness& psi, std::span<const PartialBooleanFunction> gs, const Rational& delta) {
  Layout l = layout_of(gs);
  Rational s = 0;
  for (std::uint64_t x = 0; x < psi.table.size(); ++x) {
    int prod = 1;
    for (std::size_t i = 0; i < gs.size(); ++i) prod *= gs[i].value(l.part(x, i));
    if (prod != 0) s += prod * psi.table[x];
    else s -= abs(psi.table[x]);
  }
  return s - delta * psi.table.l1_norm();
}

CompositeWitness build_psi_k(std::span<const DualWitness> psis, std::span<const PartialBooleanFunction> gs, int k,
                             const Rational& eps, const Rational& delta) {
  const int n = static_cast<int>(psis.size());
  if (n < 1 || gs.size() != psis.size()) throw WitnessError("need one witness per function", -1);
  if (eps <= 0 || eps >= 1) throw WitnessError("eps must lie in (0,1)", -1);
  if (delta < 0) throw WitnessError("delta must be nonnegative", -1);
  for (int i = 0; i < n; ++i) {
    if (psis[i].num_vars() != gs[i].num_vars()) throw WitnessError("witness arity differs from its function", i);
    if (psis[i].l1_norm() != 1) throw WitnessError("witness must have unit l1 norm", i);
    if (correlation(psis[i], gs[i]) <= 1 - eps) throw WitnessError("witness correlation must exceed 1 - eps", i);
  }
  SymmetricFallingPolynomial p = pk_poly(n, k);
  Layout l = layout_of(gs);

  CompositeWitness w;
  w.kind = WitnessKind::psi_k;
  w.blocks = l.sizes;
  w.k = k;
  w.params = {{"k", std::to_string(k)}, {"eps", to_string(eps)}, {"delta", to_string(delta)}};
  std::vector<Rational> etas;
  std::vector<int> orders;
  for (int i = 0; i < n; ++i) {
    w.extensions.push_back(extend_by_witness(gs[i], psis[i]));
    Rational ip = 0;
    for (std::uint64_t x = 0; x < psis[i].size(); ++x) ip += w.extensions[i].value(x) * psis[i][x];
    etas.push_back(Rational(1, 2) - ip / 2);
    orders.push_back(psis[i].order());
  }
  std::vector<Rational> table(std::uint64_t{1} << l.total);
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    Rational prod = 1;
    std::uint64_t z = 0;
    for (int i = 0; i < n && prod != 0; ++i) {
      std::uint64_t xi = l.part(x, i);
      const Rational& v = psis[i][xi];
      prod *= v;
      if (w.extensions[i].value(xi) * sign_of(v) < 0) z |= std::uint64_t{1} << i;
    }
    if (prod != 0) table[x] = p.levels[popcount(z)] * prod;
  }
  w.table = DualWitness(l.total, std::move(table));
  w.claimed_order = smallest_sum(orders, n - k);

  w.checks.push_back(make_check("l1 = E_mu|p_k(z)|", w.table.l1_norm(), pk_expectation_abs(p, etas), Relation::eq));
  w.checks.push_back(make_check("pure high degree order", w.table.order(), w.claimed_order, Relation::ge));
  w.checks.push_back(make_check("max eta_i < eps/2", *std::max_element(etas.begin(), etas.end()), eps / 2, Relation::lt));
  Rational half = eps / 2;
  Rational rhs = Rational(factorial(k)) * power(1 - half, n) *
                 (1 - delta - (1 + delta) * Rational(binomial(n, k + 1)) * power(half, k + 1) / power(1 - half, n));
  w.checks.push_back(make_check("correlation bound", psi_k_advantage(w, gs, delta), rhs, Relation::gt));
  return w;
}

ApproximantSystem indicator_system(std::span<const PartialBooleanFunction> gs) {
  Layout l = layout_of(gs);
  ApproximantSystem sys;
  sys.num_vars = l.total;
  sys.phi.assign(std::size_t{1} << gs.size(), std::vector<Rational>(std::size_t{1} << l.total));
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << l.total); ++x) {
    std::uint64_t z;
    if (answer_vector(gs, x, &z)) sys.phi[z][x] = 1;
  }
  return sys;
}

Rational system_success(std::span<const PartialBooleanFunction> gs, const ApproximantSystem& sys, int m) {
  std::optional<Rational> best;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << sys.num_vars); ++x) {
    std::uint64_t a;
    if (!answer_vector(gs, x, &a)) continue;
    Rational s = 0;
    for (std::uint64_t w = 0; w < sys.phi.size(); ++w)
      if (popcount(w) <= m) s += sys.phi[w ^ a][x];
    if (!best || s < *best) best = s;
  }
  return best.value_or(Rational(1));
}

std::pair<ApproximantSystem, Rational> random_system(std::span<const PartialBooleanFunction> gs, int m,
                                                     std::uint64_t seed) {
  Layout l = layout_of(gs);
  std::mt19937_64 rng(seed);
  ApproximantSystem sys;
  sys.num_vars = l.total;
  const std::size_t nz = std::size_t{1} << gs.size();
  sys.phi.assign(nz, std::vector<Rational>(std::size_t{1} << l.total));
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << l.total); ++x) {
    std::uint64_t a = 0;
    bool in_domain = answer_vector(gs, x, &a);
    std::vector<long> weight(nz);
    long total = static_cast<long>(rng() % 9);
    for (std::size_t z = 0; z < nz; ++z) {
      weight[z] = static_cast<long>(rng() % 5);
      if (in_domain && z == a) weight[z] += 24;
      total += weight[z];
    }
    if (total == 0) continue;
    for (std::size_t z = 0; z < nz; ++z) {
      long sign = (in_domain && z == a) || (rng() & 1) ? 1 : -1;
      sys.phi[z][x] = Rational(sign * weight[z], total);
    }
  }
  Rational sigma = system_success(gs, sys, m);
  return {std::move(sys), sigma};
}

CompositeWitness build_phi_ell(const ApproximantSystem& sys, std::span<const PartialBooleanFunction> gs,
                               std::span<const PartialBooleanFunction> fs, const UnivariatePolynomial& Q,
                               const ApproximantSpec& spec) {
  const int n = static_cast<int>(gs.size());
  if (n < 1 || fs.size() != gs.size()) throw WitnessError("need one extension per function", -1);
  Layout l = layout_of(gs);
  for (int i = 0; i < n; ++i) {
    if (!fs[i].is_total() || fs[i].num_vars() != gs[i].num_vars()) throw WitnessError("extension must be total", i);
    for (std::uint64_t x = 0; x < gs[i].size(); ++x)
      if (gs[i].defined(x) && gs[i].value(x) != fs[i].value(x)) throw WitnessError("extension disagrees with function", i);
  }
  if (sys.num_vars != l.total || sys.phi.size() != (std::size_t{1} << n)) throw WitnessError("system has wrong shape", -1);
  if (!is_approximant(gs, sys, spec)) throw WitnessError("system violates the mass or success condition", -1);

  std::vector<Rational> q = levels_of(Q, n);
  Rational delta_q = achieved_delta(Q, n, spec.m);

  CompositeWitness w;
  w.kind = WitnessKind::phi_ell;
  w.blocks = l.sizes;
  w.extensions.assign(fs.begin(), fs.end());
  w.params = {{"ell", std::to_string(Q.degree())}, {"m", std::to_string(spec.m)},
              {"sigma", to_string(spec.sigma)}, {"delta_Q", to_string(delta_q)}};
  std::vector<Rational> table(std::uint64_t{1} << l.total);
  Rational sup = 0, worst = 0;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    std::uint64_t f = 0;
    int prod = 1;
    for (int i = 0; i < n; ++i) {
      std::uint64_t xi = l.part(x, i);
      if (fs[i].value(xi) < 0) f |= std::uint64_t{1} << i;
      prod *= gs[i].value(xi);
    }
    Rational v = 0;
    for (std::uint64_t z = 0; z < sys.phi.size(); ++z) {
      const Rational& c = sys.phi[z][x];
      if (c == 0) continue;
      Rational term = c * q[popcount(z ^ f)];
      if (popcount(z) % 2) v -= term;
      else v += term;
    }
    sup = std::max(sup, Rational(abs(v)));
    if (prod != 0) worst = std::max(worst, Rational(abs(v - prod)));
    table[x] = std::move(v);
  }
  w.table = DualWitness(l.total, std::move(table));
  w.checks.push_back(make_check("sup norm <= 1", sup, 1, Relation::le));
  w.checks.push_back(make_check("max |Phi - prod g| <= 1 - sigma + delta_Q", worst, 1 - spec.sigma + delta_q, Relation::le));
  return w;
}

ExactCheck phi_psi_bound(const CompositeWitness& phi, const CompositeWitness& psi, const Rational& eps,
                         const Rational& sigma, const Rational& delta_q) {
  if (phi.blocks != psi.blocks) throw WitnessError("witnesses live on different domains", -1);
  const int n = static_cast<int>(psi.blocks.size()), k = psi.k;
  Rational half = eps / 2;
  Rational rhs = Rational(factorial(k)) * power(1 - half, n) *
                 (2 - (2 - sigma + delta_q) * (1 + Rational(binomial(n, k + 1)) * power(half, k + 1) / power(1 - half, n)));
  return make_check("<Phi, Psi> bound", inner_product(phi.table, psi.table), rhs, Relation::gt);
}

CompositeWitness build_zeta(const DualWitness& Psi, std::span<const DualWitness> psis,
                            std::span<const PartialBooleanFunction> fs, const PartialBooleanFunction& F,
                            const Rational& eps, const Rational& delta, int k) {
  const int n = static_cast<int>(psis.size());
  if (n < 1 || fs.size() != psis.size()) throw WitnessError("need one witness per inner function", -1);
  if (k < 0 || k % 2 != 0) throw WitnessError("k must be even and nonnegative", -1);
  if (k > n - 1) throw WitnessError("k must be at most n-1", -1);
  if (eps <= 0 || eps >= 1) throw WitnessError("eps must lie in (0,1)", -1);
  if (Psi.num_vars() != n || F.num_vars() != n || !F.is_total()) throw WitnessError("outer witness has wrong arity", -1);
  if (Psi.l1_norm() != 1) throw WitnessError("outer witness must have unit l1 norm", -1);
  if (correlation(Psi, F) <= delta) throw WitnessError("outer witness correlation must exceed delta", -1);
  for (int i = 0; i < n; ++i) {
    if (!fs[i].is_total() || fs[i].num_vars() != psis[i].num_vars()) throw WitnessError("inner function must be total", i);
    if (psis[i].l1_norm() != 1) throw WitnessError("witness must have unit l1 norm", i);
    if (correlation(psis[i], fs[i]) <= 1 - eps) throw WitnessError("witness correlation must exceed 1 - eps", i);
    if (psis[i].order() < 1) throw WitnessError("witness must be orthogonal to constants", i);
  }
  SymmetricFallingPolynomial p = pk_poly(n, k);
  Layout l = layout_of(fs);

  CompositeWitness w;
  w.kind = WitnessKind::zeta;
  w.blocks = l.sizes;
  w.k = k;
  w.extensions.assign(fs.begin(), fs.end());
  w.params = {{"k", std::to_string(k)}, {"eps", to_string(eps)}, {"delta", to_string(delta)},
              {"outer_order", std::to_string(Psi.order())}};

  std::vector<std::vector<Rational>> alpha(n);
  std::vector<int> orders;
  Rational worst_eps = 0;
  for (int i = 0; i < n; ++i) {
    const auto& psi = psis[i];
    Rational mass[2] = {0, 0}, wrong[2] = {0, 0};
    for (std::uint64_t x = 0; x < psi.size(); ++x) {
      int s = sign_of(psi[x]);
      if (s == 0) continue;
      int b = s > 0 ? 0 : 1;
      mass[b] += abs(psi[x]);
      if (fs[i].value(x) != s) wrong[b] += abs(psi[x]);
    }
    w.checks.push_back(make_check("P[psi_" + std::to_string(i) + " > 0] = 1/2", mass[0], Rational(1, 2), Relation::eq));
    Rational e[2] = {wrong[0] / mass[0], wrong[1] / mass[1]};
    worst_eps = std::max({worst_eps, e[0], e[1]});
    alpha[i].resize(psi.size());
    Rational cond[2] = {0, 0};
    for (std::uint64_t x = 0; x < psi.size(); ++x) {
      int s = sign_of(psi[x]);
      if (s != 0 && fs[i].value(x) == s) {
        int b = s > 0 ? 0 : 1;
        alpha[i][x] = (1 - 2 * eps + e[b]) / (1 - e[b]);
      } else {
        alpha[i][x] = -1;
      }
      if (s != 0) cond[s > 0 ? 0 : 1] += abs(psi[x]) * alpha[i][x];
    }
    for (int b = 0; b < 2; ++b)
      w.checks.push_back(make_check("E alpha_" + std::to_string(i) + (b == 0 ? " | psi > 0" : " | psi < 0"),
                                    cond[b] / mass[b], 1 - 2 * eps, Relation::eq));
    orders.push_back(psi.order());
  }
  w.checks.push_back(make_check("max eps_(i,+-1) < eps", worst_eps, eps, Relation::lt));

  std::vector<Rational> table(std::uint64_t{1} << l.total);
  std::vector<Rational> z(n);
  Rational corr = 0;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    Rational prod = 1;
    std::uint64_t sg = 0, fx = 0;
    for (int i = 0; i < n && prod != 0; ++i) {
      std::uint64_t xi = l.part(x, i);
      const Rational& v = psis[i][xi];
      prod *= abs(v);
      if (v < 0) sg |= std::uint64_t{1} << i;
      if (fs[i].value(xi) < 0) fx |= std::uint64_t{1} << i;
      z[i] = alpha[i][xi];
    }
    if (prod == 0 || Psi[sg] == 0) continue;
    table[x] = Psi[sg] * p.at(z) * prod;
    corr += table[x] * F.value(fx);
  }
  w.table = DualWitness(l.total, std::move(table));
  w.claimed_order = smallest_sum(orders, Psi.order() - k);

  Rational pk_mid = p.at_constant(1 - 2 * eps);
  Rational scale = pk_mid / Rational(Integer(1) << n);
  w.checks.push_back(make_check("l1 = 2^-n p_k(1-2eps)", w.table.l1_norm(), scale, Relation::eq));
  w.checks.push_back(make_check("pure high degree order", w.table.order(), w.claimed_order, Relation::ge));
  Rational rhs = scale * (delta - 2 * power(eps, k + 1) / power(1 - eps, n) * Rational(binomial(n, k + 1)));
  w.checks.push_back(make_check("correlation with F(f) bound", corr, rhs, Relation::gt));
  return w;
}

}  // namespace dpt
