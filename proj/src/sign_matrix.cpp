#include "dpt/sign_matrix.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <regex>
#include <stdexcept>

namespace dpt {

PartialSignMatrix::PartialSignMatrix(int rows, int cols, std::vector<int8_t> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
  if (entries_.size() != static_cast<std::size_t>(rows) * cols) throw std::invalid_argument("matrix size mismatch");
  for (int8_t v : entries_)
    if (v != -1 && v != 0 && v != 1) throw std::invalid_argument("sign matrix entry out of range");
}

bool PartialSignMatrix::is_total() const {
  return std::find(entries_.begin(), entries_.end(), int8_t{0}) == entries_.end();
}

Eigen::MatrixXd PartialSignMatrix::to_real() const {
  if (!is_total()) throw std::invalid_argument("partial matrix has * entries");
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j);
  return m;
}

int PartialSignMatrix::rank() const {
  if (!is_total()) throw std::invalid_argument("rank requires a total matrix");
  std::vector<std::vector<long double>> a(rows_, std::vector<long double>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) a[i][j] = at(i, j);
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int piv = r;
    for (int i = r + 1; i < rows_; ++i)
      if (std::fabs(a[i][c]) > std::fabs(a[piv][c])) piv = i;
    if (std::fabs(a[piv][c]) < 1e-9) continue;
    std::swap(a[piv], a[r]);
    for (int i = r + 1; i < rows_; ++i) {
      long double f = a[i][c] / a[r][c];
      for (int j = c; j < cols_; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

PartialSignMatrix kron(const PartialSignMatrix& a, const PartialSignMatrix& b) {
  int r = a.rows() * b.rows(), c = a.cols() * b.cols();
  std::vector<int8_t> e(static_cast<std::size_t>(r) * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      e[static_cast<std::size_t>(i) * c + j] =
          static_cast<int8_t>(a.at(i / b.rows(), j / b.cols()) * b.at(i % b.rows(), j % b.cols()));
  return PartialSignMatrix(r, c, std::move(e));
}

PartialSignMatrix tensor_power(std::span<const PartialSignMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("empty tensor product");
  PartialSignMatrix out = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

PartialSignMatrix sylvester_hadamard(int k) {
  if (k < 0) throw std::invalid_argument("negative Hadamard order");
  PartialSignMatrix h(1, 1, {1});
  PartialSignMatrix h1(2, 2, {1, 1, 1, -1});
  for (int i = 0; i < k; ++i) h = kron(h, h1);
  return h;
}

PartialSignMatrix all_ones(int rows, int cols) {
  return PartialSignMatrix(rows, cols, std::vector<int8_t>(static_cast<std::size_t>(rows) * cols, 1));
}

PartialSignMatrix identity_sign(int n) {
  std::vector<int8_t> e(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1;
  return PartialSignMatrix(n, n, std::move(e));
}

PartialSignMatrix catalog_matrix(const std::string& name) {
  std::smatch m;
  static const std::regex hadamard("H([0-9]+)"), ones("J([0-9]+)x([0-9]+)"), ident("I([0-9]+)");
  if (std::regex_match(name, m, hadamard)) {
    int n = std::stoi(m[1]);
    int k = 0;
    while ((1 << k) < n) ++k;
    if ((1 << k) != n || k > 6) throw std::invalid_argument("Hadamard order must be a power of 2 up to 64");
    return sylvester_hadamard(k);
  }
  if (std::regex_match(name, m, ones)) {
    int r = std::stoi(m[1]), c = std::stoi(m[2]);
    if (r < 1 || c < 1 || r > 64 || c > 64) throw std::invalid_argument("bad J dimensions");
    return all_ones(r, c);
  }
  if (std::regex_match(name, m, ident)) {
    int n = std::stoi(m[1]);
    if (n < 1 || n > 64) throw std::invalid_argument("bad I dimension");
    return identity_sign(n);
  }
  if (name == "DISJ4") {
    std::vector<int8_t> e(16);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) e[x * 4 + y] = (x & y) ? 1 : -1;
    return PartialSignMatrix(4, 4, std::move(e));
  }
  if (name == "GT4") {
    std::vector<int8_t> e(16);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) e[x * 4 + y] = x > y ? -1 : 1;
    return PartialSignMatrix(4, 4, std::move(e));
  }
  if (name == "PH4") {
    PartialSignMatrix h = sylvester_hadamard(2);
    std::vector<int8_t> e = h.entries();
    for (int i = 0; i < 4; ++i) e[i * 4 + (3 - i)] = 0;
    return PartialSignMatrix(4, 4, std::move(e));
  }
  throw std::invalid_argument("unknown catalog matrix: " + name);
}

std::vector<std::string> catalog_matrix_names() {
  return {"H1", "H2", "H4", "H8", "H16", "J2x2", "J3x5", "I3", "I4", "DISJ4", "GT4", "PH4"};
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& v = svd.singularValues();
  return {v.data(), v.data() + v.size()};
}

ClassicNorms classic_matrix_norms(const Eigen::MatrixXd& m) {
  ClassicNorms out;
  auto sv = singular_values(m);
  for (double s : sv) {
    out.trace += s;
    out.spectral = std::max(out.spectral, s);
  }
  out.frobenius = m.norm();
  return out;
}

ClassicNorms classic_matrix_norms(const PartialSignMatrix& m) { return classic_matrix_norms(m.to_real()); }

}  // namespace dpt
