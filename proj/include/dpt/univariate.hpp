#pragma once

#include <utility>
#include <vector>

#include "dpt/rational.hpp"

namespace dpt {

class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  // coeffs[i] multiplies t^i.
  explicit UnivariatePolynomial(std::vector<Rational> coeffs);
  static UnivariatePolynomial constant(const Rational& c);
  static UnivariatePolynomial identity();

  bool is_zero() const { return c_.empty(); }
  // Index of the last nonzero coefficient; 0 for the zero polynomial.
  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(int i) const;
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& t) const;
  double evaluate(double t) const;
  UnivariatePolynomial derivative() const;

  UnivariatePolynomial operator+(const UnivariatePolynomial& o) const;
  UnivariatePolynomial operator-(const UnivariatePolynomial& o) const;
  UnivariatePolynomial operator*(const UnivariatePolynomial& o) const;
  UnivariatePolynomial operator*(const Rational& s) const;
  bool operator==(const UnivariatePolynomial& o) const { return c_ == o.c_; }

  // Euclidean division: *this = q·d + r with deg r < deg d.
  std::pair<UnivariatePolynomial, UnivariatePolynomial> divide(const UnivariatePolynomial& d) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Distinct real roots in the half-open interval (a, b].
int count_roots(const UnivariatePolynomial& p, const Rational& a, const Rational& b);
// Disjoint intervals (lo, hi] inside (a, b], each holding exactly one distinct root, ordered;
// no returned endpoint is a root unless it is the root itself (then lo < root = hi).
std::vector<std::pair<Rational, Rational>> isolate_roots(const UnivariatePolynomial& p, const Rational& a,
                                                         const Rational& b, const Rational& width);
// Exact: p(t) ≥ 0 for every t in [a, b].
bool nonnegative_on(const UnivariatePolynomial& p, const Rational& a, const Rational& b);

}  // namespace dpt
