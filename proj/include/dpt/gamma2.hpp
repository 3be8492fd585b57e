#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "dpt/rational.hpp"
#include "dpt/sign_matrix.hpp"
#include "dpt/univariate.hpp"

namespace dpt {

struct NormSettings {
  int max_dim = 64;
  double sdp_tolerance = 1e-9;
};

struct NormCertificate {
  double value = 0;
  double lower = 0;
  double upper = 0;
  double gap = 0;
  // Primal evidence: factor_rows · factor_cols reproduces the approximating matrix.
  Eigen::MatrixXd factor_rows;
  Eigen::MatrixXd factor_cols;
  // F − factor_rows·factor_cols (zero at ∗ entries).
  Eigen::MatrixXd perturbation;
  // Largest violation of the entrywise constraints by the factored matrix.
  double residual = 0;
  // Dual evidence (γ₂,ε: the weighting ψ of the duality bound; γ₂: the optimal block matrix).
  Eigen::MatrixXd dual;
  bool converged = false;
};

class SizeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

NormCertificate gamma2(const Eigen::MatrixXd& m, const NormSettings& s = {});
NormCertificate gamma2_dual(const Eigen::MatrixXd& m, const NormSettings& s = {});
NormCertificate gamma2_eps(const PartialSignMatrix& f, double eps, const NormSettings& s = {});
// Largest |entry| of m.
double max_abs(const Eigen::MatrixXd& m);

// ¼·log₂ γ₂,ε/(1−ε)(F) for total F, log₂ γ₂,ε/(1−ε)(F) − 3 for partial F, floored at 0.
double gdm_bound(const PartialSignMatrix& f, const Rational& eps, const NormSettings& s = {});

struct ErrorReduction {
  double bound = 0;
  double gamma2_quarter = 0;
  double max_error = 0;
  bool within = false;
  UnivariatePolynomial poly;
};

ErrorReduction gamma2_error_reduce(const PartialSignMatrix& f, const Rational& eps, const NormSettings& s = {});

struct NormPropertyCheck {
  std::string item;
  std::string instance;
  double lhs = 0;
  double rhs = 0;
  double tolerance = 0;
  // "ge": lhs ≥ rhs − tol; "eq": |lhs − rhs| ≤ tol.
  std::string relation = "ge";
  bool pass = false;
};

std::vector<NormPropertyCheck> gamma2_property_suite(unsigned long long seed, const NormSettings& s = {});

}  // namespace dpt
