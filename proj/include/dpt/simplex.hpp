#pragma once

#include <cstddef>
#include <vector>

#include "dpt/rational.hpp"

namespace dpt::lp {

enum class Sense { le, ge, eq };
enum class Status { optimal, infeasible, unbounded };

struct Term {
  std::size_t var;
  Rational coef;
};

class LinearProgram {
 public:
  std::size_t add_variable(bool free = false);
  std::size_t add_variables(std::size_t count, bool free = false);
  std::size_t add_constraint(std::vector<Term> terms, Sense sense, Rational rhs);
  void set_objective(std::vector<Term> terms, bool maximize);

  std::size_t num_variables() const { return free_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

 private:
  friend struct Solver;
  struct Row {
    std::vector<Term> terms;
    Sense sense;
    Rational rhs;
  };
  std::vector<bool> free_;
  std::vector<Row> rows_;
  std::vector<Term> objective_;
  bool maximize_ = true;
};

struct Solution {
  Status status = Status::infeasible;
  Rational objective = 0;
  std::vector<Rational> values;
  // Dual prices with objective = Σ rhs·dual at optimality.
  std::vector<Rational> duals;
};

Solution solve(const LinearProgram& program);

}  // namespace dpt::lp
