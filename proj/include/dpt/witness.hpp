#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpt/approximant_oracle.hpp"
#include "dpt/boolean_function.hpp"
#include "dpt/dual_witness.hpp"
#include "dpt/fourier.hpp"
#include "dpt/rational.hpp"
#include "dpt/univariate.hpp"

namespace dpt {

enum class Relation { eq, le, lt, ge, gt };

std::string to_string(Relation r);

struct ExactCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  Relation relation = Relation::ge;
  bool pass = false;
};

ExactCheck make_check(std::string name, Rational lhs, Rational rhs, Relation relation);

class WitnessError : public std::invalid_argument {
 public:
  WitnessError(const std::string& what, int index) : std::invalid_argument(what), index_(index) {}
  // Offending input position, or −1.
  int index() const { return index_; }

 private:
  int index_;
};

// p_k(z) = (−1)^k ∏_{i=1..k}(|z| − i) on the cube, |z| = number of −1 coordinates.
struct SymmetricFallingPolynomial {
  int n = 0;
  int k = 0;
  std::vector<Rational> levels;
  // Empty when n is too large to expand.
  MultilinearPolynomial multilinear;
  Rational fourier_l1;
  Integer fourier_bound;
  std::vector<ExactCheck> checks;

  Rational at(const std::vector<Rational>& z) const;
  Rational at_constant(const Rational& t) const;
};

SymmetricFallingPolynomial pk_poly(int n, int k);

// E_μ|p_k| against k!·μ(1ⁿ)·{1 + C(n,k+1)η^{k+1}/(1−η)ⁿ} for μ = Π(η₁,…,ηₙ).
ExactCheck pk_expectation_bound(const SymmetricFallingPolynomial& p, const std::vector<Rational>& etas);
Rational pk_expectation_abs(const SymmetricFallingPolynomial& p, const std::vector<Rational>& etas);

// All vertices plus `samples` seeded interior points; the returned check holds the smallest value seen.
ExactCheck pk_nonnegativity(const SymmetricFallingPolynomial& p, int samples, std::uint64_t seed);

enum class WitnessKind { psi_k, phi_ell, zeta };

std::string to_string(WitnessKind kind);

struct CompositeWitness {
  WitnessKind kind = WitnessKind::psi_k;
  // Input block sizes; block 0 sits in the low bits of a joint point.
  std::vector<int> blocks;
  int k = 0;
  DualWitness table;
  std::vector<std::pair<std::string, std::string>> params;
  // Extensions f_i used in the construction.
  std::vector<PartialBooleanFunction> extensions;
  // Order guaranteed by the construction.
  int claimed_order = 0;
  std::vector<ExactCheck> checks;

  bool all_pass() const;
  const ExactCheck* find(const std::string& name) const;
};

// f_i = g_i on dom g_i and −s̃gn ψ_i off it.
PartialBooleanFunction extend_by_witness(const PartialBooleanFunction& g, const DualWitness& psi);

// Σ_dom gψ − Σ_off |ψ|.
Rational correlation(const DualWitness& psi, const PartialBooleanFunction& g);

CompositeWitness build_psi_k(std::span<const DualWitness> psis, std::span<const PartialBooleanFunction> gs, int k,
                             const Rational& eps, const Rational& delta);

// Quantity bounded in the XOR construction: Σ_dom Ψ∏g − Σ_off |Ψ| − δ‖Ψ‖₁.
Rational psi_k_advantage(const CompositeWitness& psi, std::span<const PartialBooleanFunction> gs, const Rational& delta);

// φ_z(x) = [z = (g₁(x₁),…,gₙ(xₙ))], zero off ∏ dom gᵢ.
ApproximantSystem indicator_system(std::span<const PartialBooleanFunction> gs);
// Seeded random system obeying the mass bound; its exact success at threshold m is returned alongside.
std::pair<ApproximantSystem, Rational> random_system(std::span<const PartialBooleanFunction> gs, int m,
                                                     std::uint64_t seed);
// Largest σ for which the system obeys the success condition at threshold m.
Rational system_success(std::span<const PartialBooleanFunction> gs, const ApproximantSystem& sys, int m);

CompositeWitness build_phi_ell(const ApproximantSystem& sys, std::span<const PartialBooleanFunction> gs,
                               std::span<const PartialBooleanFunction> fs, const UnivariatePolynomial& Q,
                               const ApproximantSpec& spec);

// ⟨Φ_ℓ, Ψ_k⟩ against k!(1−ε/2)ⁿ{2 − (2 − σ + δ_Q)(1 + C(n,k+1)(ε/2)^{k+1}/(1−ε/2)ⁿ)}.
ExactCheck phi_psi_bound(const CompositeWitness& phi, const CompositeWitness& psi, const Rational& eps,
                         const Rational& sigma, const Rational& delta_q);

CompositeWitness build_zeta(const DualWitness& Psi, std::span<const DualWitness> psis,
                            std::span<const PartialBooleanFunction> fs, const PartialBooleanFunction& F,
                            const Rational& eps, const Rational& delta, int k);

Rational inner_product(const DualWitness& a, const DualWitness& b);

}  // namespace dpt
