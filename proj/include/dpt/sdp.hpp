#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dpt::sdp {

// Standard form: max ⟨C,X⟩ s.t. ⟨A_k,X⟩ = b_k, X ⪰ 0, with dual
// min bᵀy s.t. Z = Σ y_k A_k − C ⪰ 0. X is block diagonal; diagonal blocks model LP variables.
struct Block {
  int size = 0;
  bool diagonal = false;
};

// Symmetric entry: sets both (i,j) and (j,i) when i ≠ j.
struct Entry {
  int block = 0;
  int i = 0;
  int j = 0;
  double value = 0;
};

struct Problem {
  std::vector<Block> blocks;
  std::vector<Entry> C;
  std::vector<std::vector<Entry>> A;
  std::vector<double> b;

  int add_constraint(std::vector<Entry> entries, double rhs);
};

// Dense blocks use the matrix; diagonal blocks store their diagonal in the first column.
using BlockMatrix = std::vector<Eigen::MatrixXd>;

struct Options {
  double tolerance = 1e-9;
  int max_iterations = 150;
};

struct Result {
  bool converged = false;
  int iterations = 0;
  BlockMatrix X;
  BlockMatrix Z;
  Eigen::VectorXd y;
  double primal_objective = 0;
  double dual_objective = 0;
  double primal_infeasibility = 0;
  double dual_infeasibility = 0;
};

Result solve(const Problem& problem, const Options& options = {});

}  // namespace dpt::sdp
