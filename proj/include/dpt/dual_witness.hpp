#pragma once

#include <cstdint>
#include <vector>

#include "dpt/rational.hpp"

namespace dpt {

class DualWitness {
 public:
  DualWitness() = default;
  DualWitness(int num_vars, std::vector<Rational> table);

  int num_vars() const { return n_; }
  std::uint64_t size() const { return table_.size(); }
  const std::vector<Rational>& table() const { return table_; }
  const Rational& operator[](std::uint64_t x) const { return table_[x]; }
  const Rational& l1_norm() const { return l1_; }
  // Largest d with ψ ⊥ every monomial of degree < d.
  int order() const { return order_; }

  DualWitness normalized() const;
  // Direct summation over every |S| < d.
  bool orthogonal_below(int d) const;

 private:
  int n_ = 0;
  std::vector<Rational> table_{Rational(0)};
  Rational l1_ = 0;
  int order_ = 1;
};

}  // namespace dpt
