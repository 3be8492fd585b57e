#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dpt {

// Point x of {-1,+1}^n is the integer whose bit i is set iff x_i = -1.
class PartialBooleanFunction {
 public:
  PartialBooleanFunction() = default;
  // values[x] in {-1, 0, +1}; 0 marks an undefined point.
  PartialBooleanFunction(int num_vars, std::vector<int8_t> values);

  static PartialBooleanFunction from_total(int num_vars, const std::function<int(std::uint64_t)>& fn);

  int num_vars() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }
  bool defined(std::uint64_t x) const { return values_[x] != 0; }
  int value(std::uint64_t x) const { return values_[x]; }
  const std::vector<int8_t>& values() const { return values_; }

  bool is_total() const;
  bool is_constant_on_domain() const;
  std::uint64_t domain_size() const;

  bool operator==(const PartialBooleanFunction&) const = default;

 private:
  int n_ = 0;
  std::vector<int8_t> values_{1};
};

// Block i occupies the bits directly above block i-1; block 0 is the low bits.
PartialBooleanFunction tensor_xor(std::span<const PartialBooleanFunction> gs);
PartialBooleanFunction compose(const PartialBooleanFunction& F, std::span<const PartialBooleanFunction> fs);

PartialBooleanFunction parity_function(int n);
PartialBooleanFunction or_function(int n);
PartialBooleanFunction and_function(int n);
PartialBooleanFunction majority_function(int n);
PartialBooleanFunction constant_function(int n, int value);
// OR restricted to inputs of Hamming weight ≤ 1.
PartialBooleanFunction promise_or_function(int n);

// Names: const1, constm1, id1, parityN, orN, andN, majN, porN.
PartialBooleanFunction catalog_function(const std::string& name);
std::vector<std::string> catalog_function_names();

}  // namespace dpt
