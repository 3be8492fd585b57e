#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dpt/boolean_function.hpp"
#include "dpt/rational.hpp"

namespace dpt {

struct ApproximantSpec {
  Rational sigma;
  int m = 0;
};

// φ_z for every answer vector z (bit i set ⇔ z_i = −1), each a table over the joint cube.
struct ApproximantSystem {
  int num_vars = 0;
  std::vector<std::vector<Rational>> phi;
};

struct ApproximantDegreeResult {
  int degree = 0;
  // Best achievable success at degree and degree−1 (absent when degree = 0).
  Rational success;
  Rational success_below;
  ApproximantSystem system;
};

// Largest σ for which a degree-≤D (σ,m)-approximant exists.
Rational approximant_success(std::span<const PartialBooleanFunction> gs, int m, int D, ApproximantSystem* out);
ApproximantDegreeResult approximant_degree_oracle(std::span<const PartialBooleanFunction> gs,
                                                  const ApproximantSpec& spec,
                                                  std::uint64_t max_size = std::uint64_t{1} << 12);

// Exact check of the mass and success conditions at threshold σ.
bool is_approximant(std::span<const PartialBooleanFunction> gs, const ApproximantSystem& sys,
                    const ApproximantSpec& spec);
// Answer vector (g_1(x_1),…,g_n(x_n)) as a bitmask; false if x is outside ∏ dom g_i.
bool answer_vector(std::span<const PartialBooleanFunction> gs, std::uint64_t x, std::uint64_t* z);

}  // namespace dpt
