#pragma once

#include "dpt/fourier.hpp"
#include "dpt/univariate.hpp"

namespace dpt {

enum class ParityMethod { lp, closed_form };

struct ParityApproximant {
  UnivariatePolynomial Q;
  int n = 0;
  int m = 0;
  int ell = 0;
  // max of |Q(i)−(−1)^i| over i ≤ m and |Q(i)| over m < i ≤ n.
  Rational delta;
  // |Q(i)| ≤ 1 for i = 0..n.
  bool bounded = false;
};

Rational achieved_delta(const UnivariatePolynomial& Q, int n, int m);
ParityApproximant parity_approximant(int n, int m, int ell, ParityMethod method);

// Interpolant of (−1)^i at i = 0..n.
UnivariatePolynomial parity_interpolant(int n);

struct SymmetrizedPolynomial {
  MultilinearPolynomial q;
  Rational fourier_l1;
  // C(n, ≤ ℓ)
  Integer prefix_binomial;
  // ‖q̂‖₁² ≤ C(n,≤ℓ), exact; only meaningful when bounded.
  bool l1_bound_ok = false;
  bool bounded = false;
};

SymmetrizedPolynomial symmetrize_to_cube(const UnivariatePolynomial& Q, int n);
std::vector<Rational> levels_of(const UnivariatePolynomial& Q, int n);

}  // namespace dpt
