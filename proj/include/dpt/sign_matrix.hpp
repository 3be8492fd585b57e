#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dpt {

// Entries are -1, +1, or 0 for ∗.
class PartialSignMatrix {
 public:
  PartialSignMatrix() = default;
  PartialSignMatrix(int rows, int cols, std::vector<int8_t> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  bool is_total() const;
  const std::vector<int8_t>& entries() const { return entries_; }

  // Rejects ∗ entries.
  Eigen::MatrixXd to_real() const;
  int rank() const;

  bool operator==(const PartialSignMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int8_t> entries_;
};

PartialSignMatrix sylvester_hadamard(int k);
PartialSignMatrix kron(const PartialSignMatrix& a, const PartialSignMatrix& b);
PartialSignMatrix tensor_power(std::span<const PartialSignMatrix> factors);
PartialSignMatrix all_ones(int rows, int cols);
// +1 on the diagonal, -1 elsewhere.
PartialSignMatrix identity_sign(int n);

// Names: H<N> (N a power of 2), J<r>x<c>, I<n>, DISJ4, GT4, PH4.
PartialSignMatrix catalog_matrix(const std::string& name);
std::vector<std::string> catalog_matrix_names();

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct ClassicNorms {
  double spectral = 0;
  double trace = 0;
  double frobenius = 0;
};

// min(rows, cols) singular values, largest first.
std::vector<double> singular_values(const Eigen::MatrixXd& m);
ClassicNorms classic_matrix_norms(const Eigen::MatrixXd& m);
ClassicNorms classic_matrix_norms(const PartialSignMatrix& m);

}  // namespace dpt
