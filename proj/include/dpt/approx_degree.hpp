#pragma once

#include <optional>
#include <vector>

#include "dpt/boolean_function.hpp"
#include "dpt/dual_witness.hpp"
#include "dpt/fourier.hpp"
#include "dpt/rational.hpp"

namespace dpt {

// Optimal error E_d of a degree-d approximation (partial-function convention) with a
// primal approximant p and the normalized dual ψ attaining it.
struct DegreeLpSolution {
  int degree = 0;
  Rational error;
  MultilinearPolynomial approximant;
  std::optional<DualWitness> witness;
};

DegreeLpSolution best_approximation(const PartialBooleanFunction& f, int d);

struct ApproxDegreeResult {
  int degree = 0;
  Rational epsilon;
  MultilinearPolynomial approximant;
  Rational approximant_error;
  // Certifies deg_ε(f) > degree-1; absent when degree = 0.
  std::optional<DualWitness> witness;
  bool primal_ok = false;
  bool dual_ok = false;
};

ApproxDegreeResult approx_degree(const PartialBooleanFunction& f, const Rational& eps);

struct WitnessReport {
  Rational correlation;
  Rational l1;
  bool correlation_ok = false;
  bool orthogonality_ok = false;
  bool weak_correlation_ok = false;
  bool pass() const { return correlation_ok && orthogonality_ok; }
};

// Checks Σ_dom fψ − Σ_off|ψ| > ε‖ψ‖₁ and ψ ⊥ every polynomial of degree ≤ d.
WitnessReport verify_dual_witness(const DualWitness& psi, const PartialBooleanFunction& f, const Rational& eps, int d);
bool verify_approximant(const MultilinearPolynomial& p, const PartialBooleanFunction& f, const Rational& eps);

struct ThresholdDegreeResult {
  int degree = 0;
  // f(x)p(x) ≥ 1 on every point.
  MultilinearPolynomial representation;
  // ψ with fψ ≥ 0, ψ ≠ 0, ψ ⊥ degree ≤ degree-1.
  std::optional<DualWitness> witness;
  bool primal_ok = false;
  bool dual_ok = false;
};

ThresholdDegreeResult threshold_degree(const PartialBooleanFunction& f);

}  // namespace dpt
