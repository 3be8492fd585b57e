#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "dpt/approx_degree.hpp"
#include "dpt/distribution.hpp"
#include "dpt/parity_approximant.hpp"
#include "dpt/witness.hpp"

using namespace dpt;

namespace {

std::vector<Rational> hadamard_spectrum(std::vector<Rational> t) {
  for (std::size_t h = 1; h < t.size(); h <<= 1)
    for (std::size_t i = 0; i < t.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        Rational a = t[j], b = t[j + h];
        t[j] = a + b;
        t[j + h] = a - b;
      }
  return t;
}

Rational brute_l1(const std::vector<Rational>& table) {
  Rational s = 0;
  for (const auto& c : hadamard_spectrum(table)) s += abs(c);
  return s / Rational(Integer(table.size()));
}

int brute_order(const std::vector<Rational>& table) {
  auto spectrum = hadamard_spectrum(table);
  int best = 64;
  for (std::size_t s = 0; s < spectrum.size(); ++s)
    if (spectrum[s] != 0) best = std::min(best, std::popcount(s));
  return best;
}

Rational brute_correlation(const std::vector<Rational>& psi, const PartialBooleanFunction& g) {
  Rational s = 0;
  for (std::uint64_t x = 0; x < g.size(); ++x) s += g.defined(x) ? Rational(g.value(x) * psi[x]) : Rational(-abs(psi[x]));
  return s;
}

Rational brute_expectation_abs(const std::vector<Rational>& table, const std::vector<Rational>& etas) {
  Rational s = 0;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    Rational p = 1;
    for (std::size_t i = 0; i < etas.size(); ++i) p *= (x >> i & 1) ? etas[i] : Rational(1 - etas[i]);
    s += p * abs(table[x]);
  }
  return s;
}

DualWitness witness_for(const std::string& name, const Rational& eps) {
  auto r = approx_degree(catalog_function(name), eps);
  REQUIRE(r.witness.has_value());
  return *r.witness;
}

bool all_pass(const std::vector<ExactCheck>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

}  // namespace

TEST_CASE("falling polynomial levels and spectrum") {
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k < n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      auto p = pk_poly(n, k);
      REQUIRE(p.levels.size() == std::size_t(n + 1));
      for (int w = 0; w <= n; ++w) {
        Rational v = k % 2 ? -1 : 1;
        for (int i = 1; i <= k; ++i) v *= w - i;
        CHECK(p.levels[w] == v);
      }
      std::vector<Rational> table(std::size_t{1} << n);
      for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = p.levels[std::popcount(x)];
      CHECK(p.multilinear.to_table() == table);
      CHECK(p.multilinear.degree() <= k);
      CHECK(p.fourier_l1 == brute_l1(table));
      CHECK(all_pass(p.checks));
      std::vector<Rational> z(n, Rational(1, 3));
      CHECK(p.at(z) == p.multilinear.evaluate(z));
      CHECK(p.at_constant(Rational(1, 3)) == p.at(z));
    }
  CHECK_THROWS_AS(pk_poly(3, 3), WitnessError);
}

TEST_CASE("falling polynomial expectation") {
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k < n; ++k)
      for (Rational eta : {Rational(1, 10), Rational(1, 4), Rational(2, 5)}) {
        auto p = pk_poly(n, k);
        std::vector<Rational> etas(n, eta);
        auto table = p.multilinear.to_table();
        CHECK(pk_expectation_abs(p, etas) == brute_expectation_abs(table, etas));
        CHECK(ProductDistribution(etas).expectation(std::vector<Rational>(table.size(), 1)) == 1);
        CHECK(pk_expectation_bound(p, etas).pass);
      }
  auto p = pk_poly(4, 2);
  std::vector<Rational> mixed{Rational(1, 10), Rational(1, 5), Rational(1, 7), Rational(1, 3)};
  CHECK(pk_expectation_abs(p, mixed) == brute_expectation_abs(p.multilinear.to_table(), mixed));
  CHECK(pk_nonnegativity(pk_poly(7, 4), 2000, 3).pass);
}

TEST_CASE("correlation and extension") {
  auto psi = witness_for("maj3", Rational(2, 3));
  auto g = catalog_function("maj3");
  CHECK(correlation(psi, g) == brute_correlation(psi.table(), g));
  CHECK(correlation(psi, g) > Rational(2, 3));
  auto promise = catalog_function("por3");
  auto w = witness_for("por3", Rational(1, 3));
  auto f = extend_by_witness(promise, w);
  CHECK(f.is_total());
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (promise.defined(x))
      CHECK(f.value(x) == promise.value(x));
    else if (w[x] != 0)
      CHECK(f.value(x) == (w[x] > 0 ? -1 : 1));
  }
  CHECK(correlation(w, f) >= correlation(w, promise));
}

TEST_CASE("XOR witness") {
  auto maj = catalog_function("maj3");
  auto psi = witness_for("maj3", Rational(2, 3));
  std::vector<DualWitness> ps{psi, psi};
  std::vector<PartialBooleanFunction> gs{maj, maj};

  auto w0 = build_psi_k(ps, gs, 0, Rational(1, 3), Rational(1, 2));
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(w0.table[x] == psi[x & 7] * psi[x >> 3]);
  CHECK(w0.table.l1_norm() == 1);

  for (int k : {0, 1}) {
    auto w = build_psi_k(ps, gs, k, Rational(1, 3), Rational(1, 2));
    CAPTURE(k);
    CHECK(w.all_pass());
    CHECK(brute_order(w.table.table()) >= w.claimed_order);
    CHECK(w.table.orthogonal_below(w.claimed_order));
    Rational l1 = 0;
    for (const auto& v : w.table.table()) l1 += abs(v);
    CHECK(w.table.l1_norm() == l1);
    CHECK(w.find("pure high degree order") != nullptr);
    Rational adv = brute_correlation(w.table.table(), tensor_xor(std::span<const PartialBooleanFunction>(gs))) -
                   Rational(1, 2) * l1;
    CHECK(psi_k_advantage(w, gs, Rational(1, 2)) == adv);
  }

  try {
    std::vector<DualWitness> bad{psi, DualWitness(3, std::vector<Rational>(8, Rational(1, 8)))};
    build_psi_k(bad, gs, 0, Rational(1, 3), Rational(1, 2));
    FAIL("expected an error");
  } catch (const WitnessError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(build_psi_k(ps, gs, 0, Rational(0), Rational(1, 2)), WitnessError);
}

TEST_CASE("approximant witnesses") {
  auto maj = catalog_function("maj3");
  std::vector<PartialBooleanFunction> gs{maj, maj};
  auto ind = indicator_system(gs);
  CHECK(system_success(gs, ind, 0) == 1);
  auto phi = build_phi_ell(ind, gs, gs, parity_interpolant(2), {1, 0});
  for (std::uint64_t x = 0; x < 64; ++x) CHECK(phi.table[x] == maj.value(x & 7) * maj.value(x >> 3));
  CHECK(phi.all_pass());

  for (std::uint64_t seed : {1, 2, 3}) {
    auto [sys, sigma] = random_system(gs, 0, seed);
    CHECK(sigma == system_success(gs, sys, 0));
    CHECK(is_approximant(gs, sys, {sigma, 0}));
    auto Q = parity_approximant(2, 0, 2, ParityMethod::lp);
    auto p = build_phi_ell(sys, gs, gs, Q.Q, {sigma, 0});
    CHECK(p.all_pass());
  }
  auto flipped = maj;
  std::vector<int8_t> v = maj.values();
  v[0] = -v[0];
  std::vector<PartialBooleanFunction> fs{maj, PartialBooleanFunction(3, v)};
  try {
    build_phi_ell(ind, gs, fs, parity_interpolant(2), {1, 0});
    FAIL("expected an error");
  } catch (const WitnessError& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("composition witness") {
  auto maj = catalog_function("maj3");
  std::vector<PartialBooleanFunction> fs{maj, maj};
  for (auto name : {"and2", "parity2"})
    for (auto [eps, delta] : {std::pair{Rational(1, 2), Rational(1, 2)}, std::pair{Rational(1, 2), Rational(2, 3)},
                              std::pair{Rational(1, 8), Rational(9, 10)}}) {
      if (std::string(name) == "parity2" && delta == Rational(1, 2)) continue;
      CAPTURE(name);
      auto F = catalog_function(name);
      auto Psi = witness_for(name, delta);
      auto inner = witness_for("maj3", 1 - eps);
      std::vector<DualWitness> zs{inner, inner};
      auto z = build_zeta(Psi, zs, fs, F, eps, delta, 0);
      CHECK(z.all_pass());
      CHECK(brute_order(z.table.table()) >= z.claimed_order);
      auto composed = compose(F, std::span<const PartialBooleanFunction>(fs));
      CHECK(correlation(z.table.normalized(), composed) ==
            brute_correlation(z.table.normalized().table(), composed));
    }
  auto and2 = catalog_function("and2");
  auto Psi = witness_for("and2", Rational(1, 2));
  auto inner = witness_for("maj3", Rational(1, 2));
  std::vector<DualWitness> zs{inner, inner};
  CHECK_THROWS_AS(build_zeta(Psi, zs, fs, and2, Rational(1, 2), Rational(1, 2), 1), WitnessError);
}
