#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dpt/approx_degree.hpp"
#include "dpt/bench.hpp"
#include "dpt/formats.hpp"
#include "dpt/gamma2.hpp"
#include "dpt/parity_approximant.hpp"
#include "dpt/report_io.hpp"
#include "dpt/witness.hpp"

using json = nlohmann::ordered_json;
using namespace dpt;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kCap = 3 };

struct CliConfig {
  double sdp_tolerance = 1e-9;
  int max_dim = 64;
  int max_vars = 12;
  int jobs = 1;
  std::uint64_t seed = 7;

  NormSettings norms() const { return {max_dim, sdp_tolerance}; }
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

CliConfig config_from_env() {
  CliConfig c;
  auto read = [](const char* name) -> const char* { return std::getenv(name); };
  try {
    if (const char* v = read("DPT_SDP_TOL")) c.sdp_tolerance = std::stod(v);
    if (const char* v = read("DPT_MAX_DIM")) c.max_dim = std::stoi(v);
    if (const char* v = read("DPT_JOBS")) c.jobs = std::stoi(v);
  } catch (const std::exception&) {
    throw UsageError("malformed DPT_ environment variable");
  }
  return c;
}

Rational rational_arg(const std::string& text, const char* flag) {
  if (text.find('/') == std::string::npos) throw UsageError(std::string(flag) + " expects num/den, got " + text);
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::string bits(std::uint64_t x, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if (x >> i & 1) s[i] = '1';
  return s;
}

json rational_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

json polynomial_json(const MultilinearPolynomial& p) {
  json out = json::array();
  for (const auto& [set, c] : p.coefficients())
    out.push_back({{"set", bits(set, p.num_vars())}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return out;
}

json table_json(const DualWitness& w) {
  json out = json::array();
  for (std::uint64_t x = 0; x < w.size(); ++x)
    if (w[x] != 0)
      out.push_back({{"point", bits(x, w.num_vars())},
                     {"value_num", w[x].get_num().get_str()},
                     {"value_den", w[x].get_den().get_str()}});
  return out;
}

json checks_json(const std::vector<ExactCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks)
    out.push_back({{"name", c.name},
                   {"lhs", to_string(c.lhs)},
                   {"relation", to_string(c.relation)},
                   {"rhs", to_string(c.rhs)},
                   {"pass", c.pass}});
  return out;
}

PartialBooleanFunction function_arg(const std::string& spec) {
  try {
    if (!spec.empty() && spec[0] == '@') return parse_truth_table(read_file(spec.substr(1)));
    return catalog_function(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<PartialBooleanFunction> function_list(const std::vector<std::string>& specs) {
  std::vector<PartialBooleanFunction> out;
  for (const auto& s : specs) out.push_back(function_arg(s));
  if (out.empty()) throw UsageError("--fn needs at least one function");
  return out;
}

PartialSignMatrix matrix_arg(const std::string& name, const std::string& file) {
  try {
    if (!file.empty()) return parse_matrix_csv(read_file(file));
    if (name.empty()) throw UsageError("give --matrix or --file");
    return catalog_matrix(name);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void check_vars(int n, const CliConfig& c) {
  if (n > c.max_vars) throw SizeCapExceeded("input has " + std::to_string(n) + " variables; cap is " +
                                            std::to_string(c.max_vars));
}

std::vector<DualWitness> inner_witnesses(const std::vector<PartialBooleanFunction>& gs, const Rational& eps) {
  std::vector<DualWitness> out;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    auto r = approx_degree(gs[i], 1 - eps);
    if (!r.witness) throw WitnessError("function has degree 0 at error 1 - eps", static_cast<int>(i));
    out.push_back(*r.witness);
  }
  return out;
}

json witness_json(const CompositeWitness& w) {
  json params = json::object();
  for (const auto& [k, v] : w.params) params[k] = v;
  return {{"kind", to_string(w.kind)},
          {"params", params},
          {"blocks", w.blocks},
          {"k", w.k},
          {"table", table_json(w.table)},
          {"l1_num", w.table.l1_norm().get_num().get_str()},
          {"l1_den", w.table.l1_norm().get_den().get_str()},
          {"phd_order", w.table.order()},
          {"claimed_order", w.claimed_order},
          {"checks", checks_json(w.checks)},
          {"all_pass", w.all_pass()}};
}

void emit(const json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig config;
  try {
    config = config_from_env();
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Approximate degree, gamma2 norms and composite dual witnesses"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--sdp-tol", config.sdp_tolerance, "SDP convergence tolerance (env DPT_SDP_TOL)");
  app.add_option("--max-dim", config.max_dim, "Largest matrix side for SDP solves (env DPT_MAX_DIM)");
  app.add_option("--max-vars", config.max_vars, "Largest number of variables for LP solves");
  std::string out;

  auto* degree = app.add_subcommand("degree", "Exact approximate degree with primal and dual certificates");
  std::string fn, fn_file, eps_text;
  bool threshold = false;
  degree->add_option("--fn", fn, "Catalog function name");
  degree->add_option("--file", fn_file, "Truth-table file");
  degree->add_option("--eps", eps_text, "Error as num/den");
  degree->add_flag("--threshold", threshold, "Threshold degree instead");
  degree->add_option("--out", out, "Output path");

  auto* g2 = app.add_subcommand("gamma2", "gamma2 norm with duality certificate");
  std::string matrix, matrix_file, g2_eps, gdm_eps;
  bool dual = false;
  g2->add_option("--matrix", matrix, "Catalog matrix name");
  g2->add_option("--file", matrix_file, "CSV sign matrix, * for undefined");
  g2->add_option("--eps", g2_eps, "Approximate norm at error num/den");
  g2->add_option("--gdm", gdm_eps, "Generalized discrepancy value at error num/den");
  g2->add_flag("--dual", dual, "Dual norm");
  g2->add_option("--out", out, "Output path");

  auto* wit = app.add_subcommand("witness", "Build a dual witness and list its verified invariants");
  std::string kind, outer, delta_text, w_eps;
  std::vector<std::string> fns;
  int n = 0, k = 0, ell = 0, m = 0;
  std::uint64_t wseed = 7;
  wit->add_option("kind", kind, "pk, psik, phi or zeta")->required()->check(CLI::IsMember({"pk", "psik", "phi", "zeta"}));
  wit->add_option("--n", n, "Number of variables (pk)");
  wit->add_option("--k", k, "Order parameter k");
  wit->add_option("--fn", fns, "Inner functions: catalog names or @file")->delimiter(',');
  wit->add_option("--outer", outer, "Outer function (zeta)");
  wit->add_option("--eps", w_eps, "eps as num/den");
  wit->add_option("--delta", delta_text, "delta as num/den");
  wit->add_option("--ell", ell, "Degree of the parity approximant (phi)");
  wit->add_option("--m", m, "Threshold m (phi)");
  wit->add_option("--seed", wseed, "Seed for the random system (phi)");
  wit->add_option("--out", out, "Output path");

  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  bool all = false;
  std::vector<std::string> only;
  verify->add_flag("--all", all, "Every group");
  verify->add_option("--only", only, "Group-name prefixes")->delimiter(',');
  verify->add_option("--seed", config.seed, "Suite seed");
  verify->add_option("--jobs", config.jobs, "Worker threads (env DPT_JOBS)");
  verify->add_option("--out", out, "Report path; stdout when absent");

  auto* cat = app.add_subcommand("catalog", "List built-in functions, matrices and suite groups");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*degree) {
      if (fn.empty() == fn_file.empty()) throw UsageError("give exactly one of --fn, --file");
      auto f = fn.empty() ? function_arg("@" + fn_file) : function_arg(fn);
      check_vars(f.num_vars(), config);
      if (threshold) {
        auto r = threshold_degree(f);
        emit({{"n", f.num_vars()},
              {"threshold_degree", r.degree},
              {"representation", polynomial_json(r.representation)},
              {"witness", r.witness ? table_json(*r.witness) : json(nullptr)},
              {"primal_ok", r.primal_ok},
              {"dual_ok", r.dual_ok}},
             out);
        return r.primal_ok && r.dual_ok ? kOk : kCheckFailed;
      }
      Rational eps = rational_arg(eps_text, "--eps");
      auto r = approx_degree(f, eps);
      json w = nullptr;
      if (r.witness) {
        auto rep = verify_dual_witness(*r.witness, f, eps, r.degree - 1);
        w = {{"table", table_json(*r.witness)},
             {"l1", rational_json(r.witness->l1_norm())},
             {"correlation", rational_json(rep.correlation)},
             {"phd_order", r.witness->order()},
             {"verified", rep.pass()}};
      }
      emit({{"n", f.num_vars()},
            {"eps", to_string(eps)},
            {"degree", r.degree},
            {"approximant", polynomial_json(r.approximant)},
            {"approximant_error", to_string(r.approximant_error)},
            {"witness", w},
            {"primal_ok", r.primal_ok},
            {"dual_ok", r.dual_ok}},
           out);
      return r.primal_ok && r.dual_ok ? kOk : kCheckFailed;
    }

    if (*g2) {
      auto f = matrix_arg(matrix, matrix_file);
      NormSettings s = config.norms();
      if (!gdm_eps.empty()) {
        Rational e = rational_arg(gdm_eps, "--gdm");
        double v = gdm_bound(f, e, s);
        emit({{"rows", f.rows()}, {"cols", f.cols()}, {"eps", to_string(e)}, {"gdm", v}}, out);
        return kOk;
      }
      NormCertificate c;
      std::string what = "gamma2";
      if (!g2_eps.empty()) {
        Rational e = rational_arg(g2_eps, "--eps");
        c = gamma2_eps(f, to_double(e), s);
        what = "gamma2_eps";
      } else if (dual) {
        c = gamma2_dual(f.to_real(), s);
        what = "gamma2_dual";
      } else {
        c = gamma2(f.to_real(), s);
      }
      emit({{"norm", what},
            {"rows", f.rows()},
            {"cols", f.cols()},
            {"eps", g2_eps.empty() ? json(nullptr) : json(to_string(parse_rational(g2_eps)))},
            {"value", c.value},
            {"lower", c.lower},
            {"upper", c.upper},
            {"gap", c.gap},
            {"residual", c.residual},
            {"converged", c.converged}},
           out);
      return c.converged ? kOk : kCheckFailed;
    }

    if (*wit) {
      CompositeWitness w;
      json extra = json::object();
      if (kind == "pk") {
        if (n < 1 || k < 0 || k >= n) throw UsageError("pk needs n >= 1 and 0 <= k < n");
        auto p = pk_poly(n, k);
        json levels = json::array();
        for (const auto& v : p.levels) levels.push_back(to_string(v));
        bool pass = std::all_of(p.checks.begin(), p.checks.end(), [](const ExactCheck& c) { return c.pass; });
        emit({{"kind", "pk"},
              {"n", n},
              {"k", k},
              {"levels", levels},
              {"fourier_l1", to_string(p.fourier_l1)},
              {"fourier_bound", p.fourier_bound.get_str()},
              {"checks", checks_json(p.checks)},
              {"all_pass", pass}},
             out);
        return pass ? kOk : kCheckFailed;
      }
      Rational eps = rational_arg(w_eps, "--eps"), delta = rational_arg(delta_text, "--delta");
      auto gs = function_list(fns);
      int total = 0;
      for (const auto& g : gs) total += g.num_vars();
      check_vars(total, config);
      auto psis = inner_witnesses(gs, eps);
      if (kind == "psik") {
        w = build_psi_k(psis, gs, k, eps, delta);
      } else if (kind == "phi") {
        auto psi = build_psi_k(psis, gs, k, eps, delta);
        const int count = static_cast<int>(gs.size());
        if (m < 0 || m > count || ell < 0) throw UsageError("phi needs 0 <= m <= n and ell >= 0");
        auto Q = parity_approximant(count, m, ell, ParityMethod::lp);
        auto [sys, sigma] = random_system(gs, m, wseed);
        w = build_phi_ell(sys, gs, psi.extensions, Q.Q, {sigma, m});
        w.checks.push_back(phi_psi_bound(w, psi, eps, sigma, Q.delta));
      } else {
        auto F = function_arg(outer);
        auto R = approx_degree(F, delta);
        if (!R.witness) throw WitnessError("outer function has degree 0 at error delta", -1);
        w = build_zeta(*R.witness, psis, gs, F, eps, delta, k);
      }
      emit(witness_json(w), out);
      return w.all_pass() ? kOk : kCheckFailed;
    }

    if (*verify) {
      if (!all && only.empty()) throw UsageError("give --all or --only");
      SuiteConfig sc;
      sc.seed = config.seed;
      sc.only = all ? std::vector<std::string>{} : only;
      sc.jobs = config.jobs;
      sc.settings.norms = config.norms();
      auto report = run_suite(sc);
      std::string text = suite_to_json(report);
      if (out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw UsageError("cannot write " + out);
        f << text;
      }
      std::cerr << "passed " << report.passed << ", failed " << report.failed << ", skipped " << report.skipped
                << ", recorded " << report.recorded << "\n";
      for (const auto& r : report.reports)
        if (r.status == "skipped") std::cerr << "skipped " << r.id << ": " << r.note << "\n";
      return report.failed == 0 ? kOk : kCheckFailed;
    }

    if (*cat) {
      json groups = suite_groups();
      emit({{"functions", catalog_function_names()}, {"matrices", catalog_matrix_names()}, {"groups", groups}}, out);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const WitnessError& e) {
    std::cerr << "precondition failed";
    if (e.index() >= 0) std::cerr << " at input " << e.index();
    std::cerr << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "size cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kOk;
}
