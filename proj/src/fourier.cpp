#include "dpt/fourier.hpp"

#include <stdexcept>

namespace dpt {

MultilinearPolynomial::MultilinearPolynomial(int num_vars, std::map<std::uint64_t, Rational> coefficients)
    : n_(num_vars) {
  for (auto& [s, c] : coefficients) set_coefficient(s, c);
}

Rational MultilinearPolynomial::coefficient(std::uint64_t set) const {
  auto it = coeffs_.find(set);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void MultilinearPolynomial::set_coefficient(std::uint64_t set, const Rational& value) {
  if (n_ < 64 && (set >> n_) != 0) throw std::invalid_argument("subset outside variable range");
  if (value == 0) coeffs_.erase(set);
  else coeffs_[set] = value;
}

int MultilinearPolynomial::degree() const {
  int d = 0;
  for (auto& [s, c] : coeffs_) d = std::max(d, popcount(s));
  return coeffs_.empty() ? 0 : d;
}

Rational MultilinearPolynomial::fourier_l1() const {
  Rational s = 0;
  for (auto& [set, c] : coeffs_) s += abs(c);
  return s;
}

Rational MultilinearPolynomial::evaluate(std::uint64_t x) const {
  Rational s = 0;
  for (auto& [set, c] : coeffs_) {
    if (chi(set, x) > 0) s += c;
    else s -= c;
  }
  return s;
}

Rational MultilinearPolynomial::evaluate(const std::vector<Rational>& z) const {
  if (static_cast<int>(z.size()) != n_) throw std::invalid_argument("point dimension mismatch");
  for (auto& zi : z)
    if (zi < -1 || zi > 1) throw std::invalid_argument("point outside [-1,1]^n");
  Rational s = 0;
  for (auto& [set, c] : coeffs_) {
    Rational term = c;
    for (int i = 0; i < n_; ++i)
      if ((set >> i) & 1) term *= z[i];
    s += term;
  }
  return s;
}

std::vector<Rational> MultilinearPolynomial::to_table() const {
  std::vector<Rational> t(std::size_t{1} << n_);
  for (auto& [set, c] : coeffs_) t[set] = c;
  walsh_hadamard(t);
  return t;
}

MultilinearPolynomial MultilinearPolynomial::operator+(const MultilinearPolynomial& other) const {
  MultilinearPolynomial r = *this;
  for (auto& [s, c] : other.coeffs_) r.set_coefficient(s, r.coefficient(s) + c);
  return r;
}

MultilinearPolynomial MultilinearPolynomial::operator-(const MultilinearPolynomial& other) const {
  MultilinearPolynomial r = *this;
  for (auto& [s, c] : other.coeffs_) r.set_coefficient(s, r.coefficient(s) - c);
  return r;
}

MultilinearPolynomial MultilinearPolynomial::operator*(const Rational& scale) const {
  MultilinearPolynomial r(n_);
  for (auto& [s, c] : coeffs_) r.set_coefficient(s, c * scale);
  return r;
}

MultilinearPolynomial MultilinearPolynomial::operator*(const MultilinearPolynomial& other) const {
  if (other.n_ != n_) throw std::invalid_argument("variable count mismatch");
  std::map<std::uint64_t, Rational> acc;
  for (auto& [s, c] : coeffs_)
    for (auto& [t, d] : other.coeffs_) acc[s ^ t] += c * d;
  return MultilinearPolynomial(n_, std::move(acc));
}

bool MultilinearPolynomial::operator==(const MultilinearPolynomial& other) const {
  return n_ == other.n_ && coeffs_ == other.coeffs_;
}

void walsh_hadamard(std::vector<Rational>& t) {
  std::size_t n = t.size();
  if (n == 0 || (n & (n - 1))) throw std::invalid_argument("table size must be a power of two");
  Rational a, b;
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        a = t[j];
        b = t[j + h];
        t[j] = a + b;
        t[j + h] = a - b;
      }
}

MultilinearPolynomial fourier_transform(int num_vars, const std::vector<Rational>& table) {
  if (table.size() != (std::size_t{1} << num_vars)) throw std::invalid_argument("table size mismatch");
  std::vector<Rational> t = table;
  walsh_hadamard(t);
  Rational scale(1, Integer(1) << num_vars);
  std::map<std::uint64_t, Rational> coeffs;
  Rational parseval = 0, energy = 0;
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (t[s] == 0) continue;
    Rational c = t[s] * scale;
    parseval += c * c;
    coeffs.emplace(s, c);
  }
  for (auto& v : table) energy += v * v;
  if (parseval != energy * scale) throw std::logic_error("Parseval identity violated");
  return MultilinearPolynomial(num_vars, std::move(coeffs));
}

MultilinearPolynomial fourier_transform(const PartialBooleanFunction& f) {
  if (!f.is_total()) throw std::invalid_argument("Fourier transform needs a total function");
  std::vector<Rational> t(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) t[x] = f.value(x);
  return fourier_transform(f.num_vars(), t);
}

int pure_high_degree_order(int num_vars, const std::vector<Rational>& table) {
  std::vector<Rational> t = table;
  walsh_hadamard(t);
  int order = num_vars + 1;
  for (std::size_t s = 0; s < t.size(); ++s)
    if (t[s] != 0) order = std::min(order, popcount(s));
  return order;
}

std::vector<Rational> poisson_binomial(const std::vector<Rational>& probs) {
  std::vector<Rational> dist{Rational(1)};
  for (auto& p : probs) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability outside [0,1]");
    std::vector<Rational> next(dist.size() + 1);
    Rational q = 1 - p;
    for (std::size_t w = 0; w < dist.size(); ++w) {
      next[w] += dist[w] * q;
      next[w + 1] += dist[w] * p;
    }
    dist = std::move(next);
  }
  return dist;
}

Rational symmetric_extension(const std::vector<Rational>& levels, const std::vector<Rational>& z) {
  if (levels.size() != z.size() + 1) throw std::invalid_argument("level count mismatch");
  std::vector<Rational> probs;
  probs.reserve(z.size());
  for (auto& zi : z) {
    if (zi < -1 || zi > 1) throw std::invalid_argument("point outside [-1,1]^n");
    probs.push_back((1 - zi) / 2);
  }
  auto dist = poisson_binomial(probs);
  Rational s = 0;
  for (std::size_t w = 0; w < levels.size(); ++w) s += dist[w] * levels[w];
  return s;
}

Integer krawtchouk(int n, int j, int w) {
  Integer s = 0;
  for (int i = 0; i <= j; ++i) {
    Integer term = binomial(w, i) * binomial(n - w, j - i);
    if (i & 1) s -= term;
    else s += term;
  }
  return s;
}

std::vector<Rational> symmetric_fourier_levels(const std::vector<Rational>& levels) {
  int n = static_cast<int>(levels.size()) - 1;
  std::vector<Rational> out(n + 1);
  Rational scale(1, Integer(1) << n);
  for (int j = 0; j <= n; ++j) {
    Rational s = 0;
    for (int w = 0; w <= n; ++w) s += Rational(binomial(n, w) * krawtchouk(n, j, w)) * levels[w];
    out[j] = s * scale / Rational(binomial(n, j));
  }
  return out;
}

Rational symmetric_fourier_l1(const std::vector<Rational>& levels) {
  auto lv = symmetric_fourier_levels(levels);
  int n = static_cast<int>(levels.size()) - 1;
  Rational s = 0;
  for (int j = 0; j <= n; ++j) s += Rational(binomial(n, j)) * abs(lv[j]);
  return s;
}

MultilinearPolynomial symmetric_to_multilinear(const std::vector<Rational>& levels) {
  int n = static_cast<int>(levels.size()) - 1;
  auto lv = symmetric_fourier_levels(levels);
  MultilinearPolynomial p(n);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) p.set_coefficient(s, lv[popcount(s)]);
  return p;
}

}  // namespace dpt
