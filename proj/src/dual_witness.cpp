#include "dpt/dual_witness.hpp"

#include <stdexcept>

#include "dpt/fourier.hpp"

namespace dpt {

DualWitness::DualWitness(int num_vars, std::vector<Rational> table) : n_(num_vars), table_(std::move(table)) {
  if (table_.size() != (std::size_t{1} << n_)) throw std::invalid_argument("witness table size mismatch");
  for (auto& v : table_) l1_ += abs(v);
  order_ = pure_high_degree_order(n_, table_);
}

DualWitness DualWitness::normalized() const {
  if (l1_ == 0) throw std::invalid_argument("cannot normalize the zero witness");
  std::vector<Rational> t = table_;
  for (auto& v : t) v /= l1_;
  return DualWitness(n_, std::move(t));
}

bool DualWitness::orthogonal_below(int d) const {
  for (std::uint64_t s = 0; s < table_.size(); ++s) {
    if (popcount(s) >= d) continue;
    Rational acc = 0;
    for (std::uint64_t x = 0; x < table_.size(); ++x) {
      if (chi(s, x) > 0) acc += table_[x];
      else acc -= table_[x];
    }
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace dpt
