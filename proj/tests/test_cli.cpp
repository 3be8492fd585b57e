#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dpt/approx_degree.hpp"
#include "dpt/formats.hpp"
#include "dpt/gamma2.hpp"

using namespace dpt;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " \"" DPT_CLI_PATH "\" " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "dpt_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string coefficient_key(std::uint64_t set, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (set >> i & 1) ? '1' : '0';
  return s;
}

}  // namespace

TEST_CASE("degree") {
  auto p = run("degree --fn parity3 --eps 1/3");
  CHECK(p.code == 0);
  auto j = json::parse(p.out);
  CHECK(j["degree"] == 3);
  CHECK(j["primal_ok"] == true);
  CHECK(j["dual_ok"] == true);
  CHECK(json::parse(run("degree --fn const1 --eps 1/3").out)["degree"] == 0);
  CHECK(json::parse(run("degree --fn maj3 --threshold").out)["threshold_degree"] == 1);
}

TEST_CASE("degree from a file matches the library") {
  auto f = catalog_function("por3");
  auto path = scratch("por3.tt");
  std::ofstream(path) << format_truth_table(f);
  auto r = run("degree --file " + path.string() + " --eps 1/2");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  auto lib = approx_degree(f, Rational(1, 2));
  CHECK(j["degree"] == lib.degree);
  CHECK(j["approximant_error"].get<std::string>().find('/') != std::string::npos);
  std::size_t nonzero = 0;
  for (const auto& [set, c] : lib.approximant.coefficients())
    if (c != 0) ++nonzero;
  CHECK(j["approximant"].size() == nonzero);
  for (const auto& term : j["approximant"]) {
    Rational v(term["num"].get<std::string>() + "/" + term["den"].get<std::string>());
    v.canonicalize();
    bool found = false;
    for (const auto& [set, c] : lib.approximant.coefficients())
      if (coefficient_key(set, 3) == term["set"]) {
        found = true;
        CHECK(c == v);
      }
    CHECK(found);
  }
}

TEST_CASE("gamma2") {
  auto h4 = json::parse(run("gamma2 --matrix H4").out);
  CHECK(h4["value"].get<double>() == doctest::Approx(2).epsilon(1e-6));
  CHECK(h4["value"].get<double>() == gamma2(catalog_matrix("H4").to_real()).value);
  CHECK(json::parse(run("gamma2 --matrix J3x5").out)["value"].get<double>() == doctest::Approx(1).epsilon(1e-6));
  auto half = json::parse(run("gamma2 --matrix H4 --eps 1/2").out);
  CHECK(half["value"].get<double>() == doctest::Approx(1).epsilon(1e-6));
  CHECK(half["value"].get<double>() == gamma2_eps(catalog_matrix("H4"), 0.5).value);

  auto path = scratch("gt4.csv");
  std::ofstream(path) << format_matrix_csv(catalog_matrix("GT4"));
  auto g = json::parse(run("gamma2 --file " + path.string() + " --eps 1/4").out);
  CHECK(g["value"].get<double>() == gamma2_eps(catalog_matrix("GT4"), 0.25).value);
}

TEST_CASE("witness") {
  auto r = run("witness pk --n 6 --k 2");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["levels"].size() == 7);
  CHECK(j["levels"][0] == "2/1");
}

TEST_CASE("exit codes") {
  CHECK(run("degree --fn parity3 --eps 0.5").code == 2);
  CHECK(run("degree --fn nosuch --eps 1/2").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("gamma2 --matrix H16", "DPT_MAX_DIM=8").code == 3);
  CHECK(run("--max-dim 8 gamma2 --matrix H16").code == 3);
  CHECK(run("catalog").code == 0);
}

TEST_CASE("verify is deterministic") {
  auto a = run("verify --only xor_degree,bucket_partition --seed 7");
  auto b = run("verify --only xor_degree,bucket_partition --seed 7 --jobs 1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = json::parse(a.out);
  CHECK(j.is_array());
  CHECK(!j.empty());
  for (const auto& r : j) CHECK(r["status"] != "fail");
}
