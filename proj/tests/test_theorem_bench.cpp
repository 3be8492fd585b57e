#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "dpt/bench.hpp"
#include "dpt/report_io.hpp"

using namespace dpt;

namespace {

double brute_mean_product(const std::vector<double>& v, int k) {
  double sum = 0;
  int count = 0;
  for (std::uint32_t s = 0; s < (1u << v.size()); ++s) {
    if (std::popcount(s) != k) continue;
    double p = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (s >> i & 1) p *= v[i];
    sum += p;
    ++count;
  }
  return sum / count;
}

int brute_min_sum(const std::vector<int>& v, int s) {
  int best = INT32_MAX;
  for (std::uint32_t m = 0; m < (1u << v.size()); ++m) {
    if (std::popcount(m) != s) continue;
    int t = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (m >> i & 1) t += v[i];
    best = std::min(best, t);
  }
  return best;
}

std::vector<PartialBooleanFunction> fns(std::initializer_list<const char*> names) {
  std::vector<PartialBooleanFunction> out;
  for (auto n : names) out.push_back(catalog_function(n));
  return out;
}

std::vector<PartialSignMatrix> mats(std::initializer_list<const char*> names) {
  std::vector<PartialSignMatrix> out;
  for (auto n : names) out.push_back(catalog_matrix(n));
  return out;
}

void expect_no_failures(const std::vector<VerificationReport>& rs, bool need_pass = true) {
  REQUIRE(!rs.empty());
  bool any_pass = false;
  for (const auto& r : rs) {
    CAPTURE(r.id);
    CAPTURE(r.note);
    CHECK(r.status != "fail");
    CHECK(recompute_pass(r) == (r.status == "pass"));
    any_pass |= r.status == "pass";
  }
  if (need_pass) CHECK(any_pass);
}

const VerificationReport& first_in(const std::vector<VerificationReport>& rs, const std::string& group) {
  for (const auto& r : rs)
    if (r.group == group) return r;
  FAIL("group missing: " << group);
  return rs.front();
}

}  // namespace

TEST_CASE("subset helpers agree with enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 3);
  std::uniform_int_distribution<int> d(0, 9);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 9;
    std::vector<double> v(n);
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) {
      v[i] = u(rng);
      w[i] = d(rng);
    }
    for (int k = 0; k <= n; ++k) {
      CHECK(subset_mean_product(v, k) == doctest::Approx(brute_mean_product(v, k)).epsilon(1e-12));
      CHECK(min_subset_sum(w, k) == brute_min_sum(w, k));
    }
  }
}

TEST_CASE("norm bound in doubles matches exact arithmetic") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> num(1, 40);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 4, k = trial % n;
    std::vector<Rational> norms;
    std::vector<double> dn;
    for (int i = 0; i < n; ++i) {
      norms.push_back(make_rational(num(rng), 10));
      dn.push_back(norms.back().get_d());
    }
    Rational eps = make_rational(num(rng) % 9 + 1, 10), delta = make_rational(num(rng) % 9, 10);
    double want = xor_norm_bound_exact(norms, eps, delta, k).get_d();
    CHECK(xor_norm_bound(dn, eps.get_d(), delta.get_d(), k) == doctest::Approx(want).epsilon(1e-9));
    // ratio term ∏x / mean_{|S|=k} ∏_S x, recomputed by enumeration
    double prod = 1;
    for (double x : dn) prod *= x;
    double half = eps.get_d() / 2;
    double tail = std::tgamma(n + 1) / (std::tgamma(k + 2) * std::tgamma(n - k)) * std::pow(half, k + 1) /
                  std::pow(1 - half, n);
    double expect = prod / brute_mean_product(dn, k) * std::pow(1 - half, n) *
                    (1 - delta.get_d() - (1 + delta.get_d()) * tail) /
                    (std::pow(eps.get_d(), n - k) * std::tgamma(n + k + 1) / (std::tgamma(k + 1) * std::tgamma(n + 1)));
    CHECK(want == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("bucket partition") {
  auto eq = bucket_partition({1, 1, 1, 1});
  CHECK(eq.lhs == 4);
  CHECK(eq.rhs == 1);
  CHECK(eq.pass);
  auto one = bucket_partition({2.5});
  CHECK(one.lhs == 2.5);
  CHECK(one.rhs == doctest::Approx(0.625));
  CHECK_THROWS(bucket_partition({}));
  CHECK_THROWS(bucket_partition({0, 0}));
  CHECK_THROWS(bucket_partition({1, -1}));

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> len(1, 20);
  std::uniform_real_distribution<double> expo(-12, 3);
  std::bernoulli_distribution zero(0.1);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(len(rng));
    for (auto& x : a) x = zero(rng) ? 0 : std::exp2(expo(rng));
    if (*std::max_element(a.begin(), a.end()) == 0) a[0] = 1;
    auto r = bucket_partition(a);
    double top = *std::max_element(a.begin(), a.end()), sum = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      sum += a[j];
      int i = r.bucket_of[j];
      if (a[j] == 0) {
        CHECK(i == 0);
        continue;
      }
      CHECK(a[j] > std::ldexp(top, -i));
      CHECK(a[j] <= std::ldexp(top, 1 - i));
    }
    std::set<int> chosen(r.selected.begin(), r.selected.end());
    double lhs = 0;
    for (int i = 1; i <= 64; ++i) {
      int size = 0;
      double least = INFINITY;
      for (std::size_t j = 0; j < a.size(); ++j)
        if (r.bucket_of[j] == i) {
          ++size;
          least = std::min(least, a[j]);
        }
      bool big = size > 0 && 8 * size >= i;
      CHECK(big == (chosen.count(i) == 1));
      if (big) lhs += size * least;
    }
    CHECK(r.lhs == doctest::Approx(lhs));
    CHECK(r.rhs == doctest::Approx(sum / 4));
    CHECK(r.pass);
    CHECK(r.lhs >= r.rhs);
  }
}

TEST_CASE("report pass rule") {
  auto a = exact_report("g", "i", "", 3, 3, Relation::ge, "l", "r", "m");
  CHECK(a.status == "pass");
  CHECK(recompute_pass(a));
  auto b = exact_report("g", "i", "", 3, 3, Relation::gt, "l", "r", "m");
  CHECK(b.status == "fail");
  CHECK(!recompute_pass(b));
  auto c = numeric_report("g", "i", "", 1.0, 1e-8, 1.0 + 5e-8, 1e-8, Relation::ge, "l", "r", "m");
  CHECK(c.tolerance == doctest::Approx(1.2e-7));
  CHECK(c.status == "pass");
  auto d = numeric_report("g", "i", "", 1.0, 0, 1.0 + 1e-6, 0, Relation::ge, "l", "r", "m");
  CHECK(d.status == "fail");
  auto s = skipped_report("g", "i", "", "vacuous", "m");
  CHECK(s.status == "skipped");
  CHECK(!recompute_pass(s));
  auto n = exact_report("g", "i", "", 1, -1, Relation::ge, "l", "r", "m");
  CHECK(n.note == "right side is nonpositive");
}

TEST_CASE("degree instances") {
  auto id1 = fns({"id1"});
  auto single = check_xor_degree(id1, Rational(1, 2), 0, "one");
  expect_no_failures(single);
  CHECK(single.front().lhs_exact == single.front().rhs_exact);
  expect_no_failures(check_xor_degree(fns({"id1", "id1", "id1"}), Rational(1, 2), 1, "ids"));

  auto ds1 = check_direct_sum_degree(fns({"maj3"}), std::vector<Rational>{Rational(1, 3)}, "one");
  expect_no_failures(ds1);
  CHECK(ds1.front().lhs_exact == ds1.front().rhs_exact);
  auto par = check_direct_sum_degree(fns({"parity2", "parity2"}), std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
                                     "parity");
  expect_no_failures(par);
  CHECK(Rational(par.front().lhs_exact) >= 4);
  expect_no_failures(check_direct_sum_degree(fns({"or2", "maj3"}),
                                             std::vector<Rational>{Rational(1, 3), Rational(1, 3)}, "mixed"));

  expect_no_failures(check_dpt_degree(fns({"id1", "id1"}), Rational(1, 8), 0, 0, 0, "ids"));
  auto sk = check_dpt_degree(fns({"or2", "or2"}), Rational(1, 2), 0, 0, 2, "or");
  CHECK(sk.front().status == "skipped");

  expect_no_failures(check_composed(catalog_function("id1"), fns({"maj3"}), Rational(1, 8), Rational(9, 10), 0, "id"));
  auto vac = check_composed(catalog_function("parity2"), fns({"maj3", "maj3"}), Rational(1, 2), Rational(2, 3), 0, "p");
  bool skipped = false;
  for (const auto& r : vac) skipped |= r.status == "skipped";
  CHECK(skipped);
  expect_no_failures(vac, false);
}

TEST_CASE("norm instances") {
  expect_no_failures(check_xor_gamma2(mats({"H4"}), Rational(1, 4), 0, Rational(1, 4), "one"));
  auto rank1 = check_xor_gamma2(mats({"H2", "J2x2"}), Rational(1, 4), 0, Rational(1, 16), "rank1");
  expect_no_failures(rank1);
  CHECK(first_in(rank1, "rank_one_factor").status == "pass");
  auto h2 = check_xor_gamma2(mats({"H2", "H2"}), Rational(3, 4), 0, Rational(9, 16), "h2");
  expect_no_failures(h2);
  CHECK(first_in(h2, "hadamard_floor").status == "pass");

  expect_no_failures(check_xor_gamma2_total(catalog_matrix("H2"), 1, "n1"));
  expect_no_failures(check_xor_gamma2_total(catalog_matrix("H2"), 2, "n2"));
  CHECK(check_xor_gamma2_total(catalog_matrix("J2x2"), 2, "rank1").front().status == "skipped");

  expect_no_failures(check_direct_sum_gamma2(mats({"H2"}), "one"));
  auto two = check_direct_sum_gamma2(mats({"H2", "H4"}), "two");
  expect_no_failures(two);
  CHECK(first_in(two, "direct_sum_gamma2_buckets").status == "pass");

  BenchSettings small;
  small.norms.max_dim = 4;
  auto capped = check_direct_sum_gamma2(mats({"H4", "H4"}), "cap", small);
  CHECK(capped.front().status == "skipped");
}

TEST_CASE("suite") {
  SuiteConfig cfg;
  cfg.only = {"xor_degree", "bucket_partition", "linf_toy"};
  auto a = run_suite(cfg);
  cfg.jobs = 1;
  auto b = run_suite(cfg);
  CHECK(suite_to_json(a) == suite_to_json(b));
  for (const auto& r : a.reports) {
    bool allowed = r.group.rfind("xor_degree", 0) == 0 || r.group == "bucket_partition" || r.group == "linf_toy";
    CHECK(allowed);
  }
  CHECK(std::is_sorted(a.reports.begin(), a.reports.end(), [](auto& x, auto& y) { return x.id < y.id; }));
  auto back = suite_from_json(suite_to_json(a));
  CHECK(suite_to_json(back) == suite_to_json(a));
  CHECK(back.passed == a.passed);

  SuiteConfig full;
  full.jobs = 1;
  auto all = run_suite(full);
  CHECK(all.failed == 0);
  CHECK(all.passed + all.failed + all.skipped + all.recorded == int(all.reports.size()));
  std::set<std::string> ids, groups;
  for (const auto& r : all.reports) {
    CAPTURE(r.id);
    CHECK(ids.insert(r.id).second);
    groups.insert(r.group);
    CHECK(r.status != "fail");
    CHECK(recompute_pass(r) == (r.status == "pass"));
    if (r.status == "skipped") CHECK(!r.note.empty());
    CHECK(!r.mapping.empty());
  }
  for (const auto& g : suite_groups()) CHECK(groups.count(g) + 0 <= 1);
  CHECK(groups.size() >= suite_groups().size());
}
