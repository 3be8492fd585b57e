#pragma once

#include <cstdint>
#include <vector>

#include "dpt/rational.hpp"

namespace dpt {

// Π(ε₁,…,εₙ): bit i equals -1 with probability εᵢ.
class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<Rational> biases);
  static ProductDistribution uniform_bias(int n, const Rational& eps);

  int num_vars() const { return static_cast<int>(biases_.size()); }
  const std::vector<Rational>& biases() const { return biases_; }
  Rational probability(std::uint64_t x) const;
  Rational expectation(const std::vector<Rational>& table) const;
  std::vector<Rational> weight_distribution() const;

 private:
  std::vector<Rational> biases_;
};

}  // namespace dpt
