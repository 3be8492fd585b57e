#include "dpt/univariate.hpp"

#include <stdexcept>

namespace dpt {

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UnivariatePolynomial UnivariatePolynomial::constant(const Rational& c) { return UnivariatePolynomial({c}); }

UnivariatePolynomial UnivariatePolynomial::identity() { return UnivariatePolynomial({Rational(0), Rational(1)}); }

void UnivariatePolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UnivariatePolynomial::coefficient(int i) const {
  return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0);
}

Rational UnivariatePolynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double UnivariatePolynomial::evaluate(double t) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UnivariatePolynomial(std::move(d));
}

UnivariatePolynomial UnivariatePolynomial::operator+(const UnivariatePolynomial& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UnivariatePolynomial(std::move(r));
}

UnivariatePolynomial UnivariatePolynomial::operator-(const UnivariatePolynomial& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UnivariatePolynomial(std::move(r));
}

UnivariatePolynomial UnivariatePolynomial::operator*(const UnivariatePolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UnivariatePolynomial(std::move(r));
}

UnivariatePolynomial UnivariatePolynomial::operator*(const Rational& s) const {
  std::vector<Rational> r = c_;
  for (auto& v : r) v *= s;
  return UnivariatePolynomial(std::move(r));
}

std::pair<UnivariatePolynomial, UnivariatePolynomial> UnivariatePolynomial::divide(
    const UnivariatePolynomial& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  std::vector<Rational> rem = c_;
  if (rem.size() < d.c_.size()) return {UnivariatePolynomial(), *this};
  std::vector<Rational> q(rem.size() - d.c_.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational f = rem[k + d.c_.size() - 1] / d.c_.back();
    q[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
  }
  rem.resize(d.c_.size() - 1);
  return {UnivariatePolynomial(std::move(q)), UnivariatePolynomial(std::move(rem))};
}

namespace {

std::vector<UnivariatePolynomial> raw_sturm(const UnivariatePolynomial& p) {
  std::vector<UnivariatePolynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    auto r = seq[seq.size() - 2].divide(seq.back()).second;
    if (r.is_zero()) break;
    // Only signs matter; normalizing keeps coefficient growth in check.
    seq.push_back(r * Rational(-1 / abs(r.leading())));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

// Sequence of the square-free part, so roots on interval endpoints are counted correctly.
std::vector<UnivariatePolynomial> sturm_sequence(const UnivariatePolynomial& p) {
  auto seq = raw_sturm(p);
  if (seq.back().degree() == 0) return seq;
  return raw_sturm(p.divide(seq.back()).first);
}

int sign_changes(const std::vector<UnivariatePolynomial>& seq, const Rational& t) {
  int changes = 0, last = 0;
  for (auto& s : seq) {
    int v = sgn(s(t));
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace

int count_roots(const UnivariatePolynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has infinitely many roots");
  if (b <= a || p.degree() == 0) return 0;
  auto seq = sturm_sequence(p);
  return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<std::pair<Rational, Rational>> isolate_roots(const UnivariatePolynomial& p, const Rational& a,
                                                         const Rational& b, const Rational& width) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has infinitely many roots");
  if (b <= a || p.degree() == 0) return out;
  auto seq = sturm_sequence(p);
  struct Item {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Item> stack{{a, b, sign_changes(seq, a), sign_changes(seq, b)}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    int count = it.vlo - it.vhi;
    if (count == 0) continue;
    if (count == 1 && it.hi - it.lo <= width) {
      out.emplace_back(it.lo, it.hi);
      continue;
    }
    Rational mid = (it.lo + it.hi) / 2;
    if (count == 1 && p(it.hi) == 0) {
      out.emplace_back(it.lo, it.hi);
      continue;
    }
    int vmid = sign_changes(seq, mid);
    stack.push_back({mid, it.hi, vmid, it.vhi});
    stack.push_back({it.lo, mid, it.vlo, vmid});
  }
  return out;
}

bool nonnegative_on(const UnivariatePolynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) return true;
  if (b < a) return true;
  if (a == b) return p(a) >= 0;
  // Strip roots at the endpoints; (t-a) and (b-t) are positive inside.
  UnivariatePolynomial h = p;
  UnivariatePolynomial left({Rational(-a), Rational(1)}), right({Rational(b), Rational(-1)});
  while (h(a) == 0) h = h.divide(left).first;
  while (h(b) == 0) h = h.divide(right).first;
  if (h(a) < 0 || h(b) < 0) return false;
  auto roots = isolate_roots(h, a, b, b - a);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    Rational probe = roots[i].second;
    if (h(probe) == 0) {
      Rational root = probe;
      probe = roots[i + 1].second;
      while (h(probe) == 0 || count_roots(h, root, probe) != 0) probe = (root + probe) / 2;
    }
    if (h(probe) < 0) return false;
  }
  return true;
}

}  // namespace dpt
