#include "dpt/distribution.hpp"

#include <stdexcept>

#include "dpt/fourier.hpp"

namespace dpt {

ProductDistribution::ProductDistribution(std::vector<Rational> biases) : biases_(std::move(biases)) {
  for (auto& b : biases_)
    if (b < 0 || b > 1) throw std::invalid_argument("bias outside [0,1]");
}

ProductDistribution ProductDistribution::uniform_bias(int n, const Rational& eps) {
  return ProductDistribution(std::vector<Rational>(n, eps));
}

Rational ProductDistribution::probability(std::uint64_t x) const {
  Rational p = 1;
  for (std::size_t i = 0; i < biases_.size(); ++i) p *= ((x >> i) & 1) ? biases_[i] : Rational(1 - biases_[i]);
  return p;
}

Rational ProductDistribution::expectation(const std::vector<Rational>& table) const {
  if (table.size() != (std::size_t{1} << biases_.size())) throw std::invalid_argument("table size mismatch");
  Rational s = 0;
  for (std::uint64_t x = 0; x < table.size(); ++x)
    if (table[x] != 0) s += probability(x) * table[x];
  return s;
}

std::vector<Rational> ProductDistribution::weight_distribution() const { return poisson_binomial(biases_); }

}  // namespace dpt
