#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "dpt/approx_degree.hpp"
#include "dpt/bench.hpp"
#include "dpt/gamma2.hpp"

using namespace dpt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

// shared_s is time already spent on work this criterion reads, such as the suite run.
void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body,
               double shared_s = 0) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  double secs = shared_s + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = o.pass && secs <= limit_s;
  if (!ok) ++failures;
  std::printf("criterion %d: %s %s (%s; %.1fs of %.0fs)\n", id, ok ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
              secs, limit_s);
  std::fflush(stdout);
}

bool within(double got, double want, double rel) { return std::fabs(got - want) <= rel * std::max(1.0, std::fabs(want)); }

std::vector<const VerificationReport*> in_groups(const SuiteReport& s, std::initializer_list<const char*> groups) {
  std::vector<const VerificationReport*> out;
  for (const auto& r : s.reports)
    for (auto g : groups)
      if (r.group == g) out.push_back(&r);
  return out;
}

Outcome all_pass(const std::vector<const VerificationReport*>& rs, std::size_t at_least) {
  int pass = 0, bad = 0;
  std::string first;
  for (auto r : rs) {
    if (r->status == "pass" && recompute_pass(*r))
      ++pass;
    else if (first.empty()) {
      ++bad;
      first = r->id;
    } else {
      ++bad;
    }
  }
  std::ostringstream d;
  d << pass << " checks passed";
  if (bad) d << ", " << bad << " not passing, first " << first;
  return {bad == 0 && rs.size() >= at_least, d.str()};
}

std::string capture(const std::string& cmd, int* code) {
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot start " + cmd);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

}  // namespace

int main() {
  criterion(1, "closed-form norm values", 30, [] {
    int n = 0;
    double worst = 0;
    bool ok = true;
    auto check = [&](const NormCertificate& c, double want) {
      ++n;
      double rel = std::fabs(c.value - want) / want;
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-6 && c.converged && c.gap <= 1e-6 * want && c.lower <= c.value && c.value <= c.upper;
    };
    for (const char* j : {"J1x1", "J2x2", "J3x5", "J4x4"}) {
      auto m = catalog_matrix(j);
      check(gamma2(m.to_real()), 1);
      for (double e : {0.0, 0.25, 0.5}) check(gamma2_eps(m, e), 1 - e);
    }
    for (int N : {2, 4, 8, 16}) {
      auto h = catalog_matrix("H" + std::to_string(N));
      check(gamma2(h.to_real()), std::sqrt(double(N)));
      for (double e : {0.0, 0.25, 0.5}) check(gamma2_eps(h, e), (1 - e) * std::sqrt(double(N)));
    }
    std::ostringstream d;
    d << n << " values, worst relative error " << worst;
    return Outcome{ok, d.str()};
  });

  SuiteConfig cfg;
  cfg.seed = 7;
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport suite = run_suite(cfg);
  double suite_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("suite: %zu reports in %.1fs\n", suite.reports.size(), suite_s);

  criterion(2, "dual norm multiplicativity on 50 random pairs", 120, [&] {
    auto rs = in_groups(suite, {"dual_multiplicativity"});
    double worst = 0;
    bool ok = rs.size() == 50;
    for (auto r : rs) {
      double rel = std::fabs(r->lhs - r->rhs) / std::fabs(r->rhs);
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-5 && r->status == "pass";
    }
    std::ostringstream d;
    d << rs.size() << " pairs, worst relative difference " << worst;
    return Outcome{ok, d.str()};
  }, suite_s);

  criterion(3, "exact degrees with primal and dual certificates", 120, [] {
    int n_checks = 0;
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
      auto f = parity_function(n);
      for (Rational e : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(3, 4)}) {
        auto r = approx_degree(f, e);
        ++n_checks;
        ok = ok && r.degree == n && r.primal_ok && r.dual_ok && verify_approximant(r.approximant, f, e) &&
             r.witness && verify_dual_witness(*r.witness, f, e, n - 1).pass();
      }
    }
    auto c = approx_degree(constant_function(3, 1), Rational(1, 3));
    ++n_checks;
    ok = ok && c.degree == 0 && c.primal_ok && verify_approximant(c.approximant, constant_function(3, 1), Rational(1, 3));
    auto t = threshold_degree(majority_function(3));
    ++n_checks;
    ok = ok && t.degree == 1 && t.primal_ok && t.dual_ok;
    return Outcome{ok, std::to_string(n_checks) + " degrees certified"};
  });

  criterion(4, "falling polynomial values, spectrum, expectation and nonnegativity", 120,
            [&] { return all_pass(in_groups(suite, {"falling_polynomial"}), 1); }, suite_s);

  criterion(5, "witness chain in exact arithmetic", 300,
            [&] { return all_pass(in_groups(suite, {"witness_chain", "composed_witness"}), 1); }, suite_s);

  criterion(6, "theorem instances", 900, [&] {
    auto rs = in_groups(suite, {"xor_degree", "direct_sum_degree", "product_degree", "xor_gamma2", "hadamard_floor",
                                "rank_one_factor", "xor_gamma2_total", "xor_gamma2_distinct", "direct_sum_gamma2_tensor",
                                "direct_sum_gamma2_buckets", "product_gamma2", "composed_degree", "composed_witness",
                                "bucket_partition", "linf_toy"});
    int pass = 0, fail = 0;
    std::vector<std::string> skipped;
    for (auto r : rs) {
      if (r->status == "skipped")
        skipped.push_back(r->id + " [" + r->note + "]");
      else if (r->status == "pass" && recompute_pass(*r))
        ++pass;
      else
        ++fail;
    }
    for (const auto& s : skipped) std::printf("  skipped: %s\n", s.c_str());
    std::ostringstream d;
    d << pass << " passed, " << fail << " failed, " << skipped.size() << " skipped";
    return Outcome{fail == 0 && pass > 0, d.str()};
  }, suite_s);

  criterion(7, "parity approximant closed form for n <= 20", 30,
            [&] { return all_pass(in_groups(suite, {"parity_closed_form"}), 60); }, suite_s);

  criterion(8, "verify --all --seed 7 is byte-identical across runs", 900, [] {
    std::string cmd = std::string("\"") + DPT_CLI_PATH + "\" verify --all --seed 7 2>/dev/null";
    int c1 = -1, c2 = -1;
    std::string a = capture(cmd, &c1), b = capture(cmd, &c2);
    std::ostringstream d;
    d << a.size() << " bytes, exit codes " << c1 << " and " << c2;
    return Outcome{c1 == 0 && c2 == 0 && !a.empty() && a == b, d.str()};
  });

  return failures == 0 ? 0 : 1;
}
