#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dpt/boolean_function.hpp"
#include "dpt/rational.hpp"

namespace dpt {

// Subsets S ⊆ [n] are bitmasks; the coefficient of χ_S is f̂(S).
class MultilinearPolynomial {
 public:
  MultilinearPolynomial() = default;
  explicit MultilinearPolynomial(int num_vars) : n_(num_vars) {}
  MultilinearPolynomial(int num_vars, std::map<std::uint64_t, Rational> coefficients);

  int num_vars() const { return n_; }
  const std::map<std::uint64_t, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::uint64_t set) const;
  void set_coefficient(std::uint64_t set, const Rational& value);

  int degree() const;
  Rational fourier_l1() const;
  Rational evaluate(std::uint64_t x) const;
  // Multilinear extension at z ∈ [-1,1]^n.
  Rational evaluate(const std::vector<Rational>& z) const;
  std::vector<Rational> to_table() const;

  MultilinearPolynomial operator+(const MultilinearPolynomial& other) const;
  MultilinearPolynomial operator-(const MultilinearPolynomial& other) const;
  MultilinearPolynomial operator*(const Rational& scale) const;
  // Pointwise product on the cube.
  MultilinearPolynomial operator*(const MultilinearPolynomial& other) const;

  bool operator==(const MultilinearPolynomial& other) const;

 private:
  int n_ = 0;
  std::map<std::uint64_t, Rational> coeffs_;
};

// In-place unnormalized Walsh-Hadamard transform: t[S] <- Σ_x t[x] χ_S(x).
void walsh_hadamard(std::vector<Rational>& t);
MultilinearPolynomial fourier_transform(int num_vars, const std::vector<Rational>& table);
MultilinearPolynomial fourier_transform(const PartialBooleanFunction& f);
// Smallest |S| with nonzero Σ_x t[x]χ_S(x); num_vars+1 if t ≡ 0.
int pure_high_degree_order(int num_vars, const std::vector<Rational>& table);

// P[|x| = w] under independent bits with P[x_i = -1] = probs[i].
std::vector<Rational> poisson_binomial(const std::vector<Rational>& probs);
// Extension of the symmetric function x ↦ levels[|x|] at z ∈ [-1,1]^n.
Rational symmetric_extension(const std::vector<Rational>& levels, const std::vector<Rational>& z);
// K_j(w) = Σ_i (-1)^i C(w,i) C(n-w,j-i)
Integer krawtchouk(int n, int j, int w);
// Per-level Fourier coefficient of x ↦ levels[|x|]: value on each |S| = j.
std::vector<Rational> symmetric_fourier_levels(const std::vector<Rational>& levels);
Rational symmetric_fourier_l1(const std::vector<Rational>& levels);
MultilinearPolynomial symmetric_to_multilinear(const std::vector<Rational>& levels);

}  // namespace dpt
