#include "dpt/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace dpt {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not a rational num/den: " + std::string(text));
  std::string n(num[0] == '+' ? num.substr(1) : num);
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Rational q(Integer(n), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, 1);
  q /= den;
  return q;
}

Rational pow(const Rational& base, unsigned exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(unsigned k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

Integer binomial_prefix(long n, long l) {
  Integer s = 0;
  for (long j = 0; j <= l && j <= n; ++j) s += binomial(n, j);
  return s;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  Rational r(v);
  return r;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace dpt
