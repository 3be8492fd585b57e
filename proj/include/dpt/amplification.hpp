#pragma once

#include <string>
#include <vector>

#include "dpt/rational.hpp"
#include "dpt/univariate.hpp"

namespace dpt {

enum class AmplificationKind {
  error_reduction,
  sign_amplify,
  // [3/4−w, 5/4+w] → [1−ε, 1+ε] for entrywise use on a 1/4-approximation.
  entry_reduction,
};

// p must send [lo, hi] into [lower, upper].
struct IntervalConstraint {
  Rational lo, hi, lower, upper;
};

struct AmplificationResult {
  UnivariatePolynomial poly;
  std::vector<IntervalConstraint> constraints;
  // Real critical points of p inside the constrained range, as isolating intervals.
  std::vector<std::pair<Rational, Rational>> critical_points;
  bool grid_ok = false;
  bool exact_ok = false;
};

std::vector<IntervalConstraint> amplification_constraints(AmplificationKind kind, const Rational& eps);
// Odd polynomial of least odd degree found by LP over a rational grid with cutting planes.
AmplificationResult amplification_poly(AmplificationKind kind, const Rational& eps, int max_degree = 61);
// Grid of denominator 2^8 per unit plus Sturm-based exact containment.
bool verify_containment(const UnivariatePolynomial& p, const std::vector<IntervalConstraint>& cs, bool* grid_ok);

}  // namespace dpt
