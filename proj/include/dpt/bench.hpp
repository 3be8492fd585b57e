#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpt/boolean_function.hpp"
#include "dpt/gamma2.hpp"
#include "dpt/rational.hpp"
#include "dpt/sign_matrix.hpp"
#include "dpt/witness.hpp"

namespace dpt {

struct VerificationReport {
  std::string id;
  std::string group;
  std::string instance;
  // pass, fail, skipped, record
  std::string status;
  bool exact = false;
  std::string lhs_exact;
  std::string rhs_exact;
  double lhs = 0;
  double rhs = 0;
  double lhs_gap = 0;
  double rhs_gap = 0;
  double slack = 0;
  double tolerance = 0;
  // One of >=, >, <=, <, == between lhs and rhs.
  std::string relation = ">=";
  std::string lhs_source;
  std::string rhs_source;
  // The explicit finite inequality being checked.
  std::string mapping;
  std::string note;
};

// Pass flag recomputed from the stored sides.
bool recompute_pass(const VerificationReport& r);

VerificationReport exact_report(const std::string& group, const std::string& instance, const std::string& suffix,
                                const Rational& lhs, const Rational& rhs, Relation relation, std::string lhs_source,
                                std::string rhs_source, std::string mapping);
// Tolerance is lhs_gap + rhs_gap + 1e-7.
VerificationReport numeric_report(const std::string& group, const std::string& instance, const std::string& suffix,
                                  double lhs, double lhs_gap, double rhs, double rhs_gap, Relation relation,
                                  std::string lhs_source, std::string rhs_source, std::string mapping);
VerificationReport skipped_report(const std::string& group, const std::string& instance, const std::string& suffix,
                                  std::string reason, std::string mapping);

struct BenchSettings {
  NormSettings norms;
};

// E over |S| = k of ∏_{i∈S} v_i.
double subset_mean_product(const std::vector<double>& v, int k);
// min over |S| = s of Σ_{i∈S} v_i.
int min_subset_sum(std::vector<int> v, int s);

// Lower bound on ‖⊗g_i‖_δ from the norms ‖g_i‖_{1−ε}, with constants C1, C2.
double xor_norm_bound(const std::vector<double>& norms, double eps, double delta, int k, double c1 = 1, double c2 = 1);
Rational xor_norm_bound_exact(const std::vector<Rational>& norms, const Rational& eps, const Rational& delta, int k);
// Lower bound on max_z ‖φ_z‖ over (σ,m)-approximants given the achieved parity error of Q_ℓ.
double product_norm_bound(const std::vector<double>& norms, double eps, double sigma, double delta_q, int k, int ell,
                          double c1 = 1, double c2 = 1);

std::vector<VerificationReport> check_xor_degree(std::span<const PartialBooleanFunction> gs, const Rational& eps, int k,
                                                 const std::string& instance);
std::vector<VerificationReport> check_direct_sum_degree(std::span<const PartialBooleanFunction> gs,
                                                        std::span<const Rational> eps, const std::string& instance);
std::vector<VerificationReport> check_dpt_degree(std::span<const PartialBooleanFunction> gs, const Rational& eps, int k,
                                                 int ell, int m, const std::string& instance);
std::vector<VerificationReport> check_xor_gamma2(std::span<const PartialSignMatrix> fs, const Rational& eps, int k,
                                                 const Rational& delta, const std::string& instance,
                                                 const BenchSettings& s = {});
std::vector<VerificationReport> check_xor_gamma2_total(const PartialSignMatrix& f, int n, const std::string& instance,
                                                       const BenchSettings& s = {});
std::vector<VerificationReport> check_xor_gamma2_distinct(std::span<const PartialSignMatrix> fs,
                                                          const std::string& instance, const BenchSettings& s = {});
std::vector<VerificationReport> check_direct_sum_gamma2(std::span<const PartialSignMatrix> fs,
                                                        const std::string& instance, const BenchSettings& s = {});
std::vector<VerificationReport> check_product_gamma2(std::span<const PartialSignMatrix> fs, const Rational& eps, int k,
                                                     int ell, const std::string& instance, const BenchSettings& s = {});
std::vector<VerificationReport> check_composed(const PartialBooleanFunction& F, std::span<const PartialBooleanFunction> fs,
                                               const Rational& eps, const Rational& delta, int k,
                                               const std::string& instance);

struct BucketResult {
  // Bucket index i ≥ 1 for every input (0 for zero entries).
  std::vector<int> bucket_of;
  std::vector<int> selected;
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
};

BucketResult bucket_partition(const std::vector<double>& a);

struct SuiteConfig {
  std::uint64_t seed = 7;
  // Group-name prefixes; empty runs every group.
  std::vector<std::string> only;
  int jobs = 1;
  BenchSettings settings;
};

struct SuiteReport {
  std::vector<VerificationReport> reports;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  int recorded = 0;
};

std::vector<std::string> suite_groups();
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace dpt
