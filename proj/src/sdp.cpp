#include "dpt/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpt::sdp {

int Problem::add_constraint(std::vector<Entry> entries, double rhs) {
  A.push_back(std::move(entries));
  b.push_back(rhs);
  return static_cast<int>(A.size()) - 1;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Expanded {
  int block;
  int a;
  int b;
  double v;
};

class Solver {
 public:
  Solver(const Problem& p, const Options& o) : p_(p), opt_(o), m_(static_cast<int>(p.A.size())) {
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
      if (p.blocks[k].size <= 0) throw std::invalid_argument("empty SDP block");
      n_total_ += p.blocks[k].size;
    }
    if (static_cast<int>(p.b.size()) != m_) throw std::invalid_argument("rhs size mismatch");
    expanded_.resize(m_);
    for (int k = 0; k < m_; ++k)
      for (auto& e : p.A[k]) {
        check(e);
        expanded_[k].push_back({e.block, e.i, e.j, e.value});
        if (e.i != e.j) expanded_[k].push_back({e.block, e.j, e.i, e.value});
      }
    for (auto& e : p.C) check(e);
  }

  Result run() {
    init();
    Result res;
    const double bnorm = 1 + VectorXd::Map(p_.b.data(), m_).norm();
    const double cnorm = 1 + norm(assemble(p_.C));
    for (int it = 0; it < opt_.max_iterations; ++it) {
      res.iterations = it;
      BlockMatrix Zi = inverse(Z_);
      VectorXd rp = b_ - apply_A(X_);
      BlockMatrix Rd = sub(sub(apply_At(y_), Cm_), Z_);
      double mu = inner(X_, Z_) / n_total_;
      double pobj = inner(Cm_, X_), dobj = b_.dot(y_);
      res.primal_infeasibility = rp.norm() / bnorm;
      res.dual_infeasibility = norm(Rd) / cnorm;
      double gap = std::fabs(pobj - dobj) / (1 + std::fabs(pobj) + std::fabs(dobj));
      if (gap < opt_.tolerance && res.primal_infeasibility < opt_.tolerance &&
          res.dual_infeasibility < opt_.tolerance) {
        res.converged = true;
        break;
      }
      MatrixXd O = schur(Zi);
      Eigen::LDLT<MatrixXd> ldlt(O);
      if (ldlt.info() != Eigen::Success) break;

      BlockMatrix base = sub(scale(X_, -1), mul3(X_, Rd, Zi));
      BlockMatrix zero = zeros();
      auto [dXa, dya, dZa] = direction(ldlt, Zi, rp, Rd, base, zero, 0, mu);
      double ap = max_step(X_, dXa), ad = max_step(Z_, dZa);
      ap = std::min(1.0, ap);
      ad = std::min(1.0, ad);
      double mu_aff = inner(add(X_, scale(dXa, ap)), add(Z_, scale(dZa, ad))) / n_total_;
      double sigma = std::clamp(std::pow(mu_aff / mu, 3), 0.0, 1.0);
      BlockMatrix second = mul(mul(dXa, dZa), Zi);
      auto [dX, dy, dZ] = direction(ldlt, Zi, rp, Rd, base, second, sigma, mu);
      ap = std::min(1.0, 0.95 * max_step(X_, dX));
      ad = std::min(1.0, 0.95 * max_step(Z_, dZ));
      X_ = add(X_, scale(dX, ap));
      y_ += ad * dy;
      Z_ = add(Z_, scale(dZ, ad));
    }
    res.X = X_;
    res.Z = Z_;
    res.y = y_;
    res.primal_objective = inner(Cm_, X_);
    res.dual_objective = b_.dot(y_);
    return res;
  }

 private:
  void check(const Entry& e) const {
    if (e.block < 0 || e.block >= static_cast<int>(p_.blocks.size())) throw std::out_of_range("entry block");
    const Block& bl = p_.blocks[e.block];
    if (e.i < 0 || e.j < 0 || e.i >= bl.size || e.j >= bl.size) throw std::out_of_range("entry index");
    if (bl.diagonal && e.i != e.j) throw std::invalid_argument("off-diagonal entry in a diagonal block");
  }

  bool diag(std::size_t k) const { return p_.blocks[k].diagonal; }

  BlockMatrix zeros() const {
    BlockMatrix out;
    for (auto& bl : p_.blocks) out.push_back(bl.diagonal ? MatrixXd::Zero(bl.size, 1) : MatrixXd::Zero(bl.size, bl.size));
    return out;
  }

  BlockMatrix identity(double s) const {
    BlockMatrix out;
    for (auto& bl : p_.blocks)
      out.push_back(bl.diagonal ? MatrixXd::Constant(bl.size, 1, s) : MatrixXd(s * MatrixXd::Identity(bl.size, bl.size)));
    return out;
  }

  BlockMatrix assemble(const std::vector<Entry>& es) const {
    BlockMatrix out = zeros();
    for (auto& e : es) {
      if (diag(e.block)) {
        out[e.block](e.i, 0) += e.value;
      } else {
        out[e.block](e.i, e.j) += e.value;
        if (e.i != e.j) out[e.block](e.j, e.i) += e.value;
      }
    }
    return out;
  }

  void init() {
    b_ = VectorXd::Map(p_.b.data(), m_);
    Cm_ = assemble(p_.C);
    double amax = 0, ratio = 0;
    for (int k = 0; k < m_; ++k) {
      double an = norm(assemble(p_.A[k]));
      amax = std::max(amax, an);
      ratio = std::max(ratio, (1 + std::fabs(p_.b[k])) / (1 + an));
    }
    double alpha = n_total_ * ratio;
    double beta = (1 + std::max(amax, norm(Cm_))) / std::sqrt(static_cast<double>(n_total_));
    X_ = identity(10 * alpha);
    Z_ = identity(10 * beta);
    y_ = VectorXd::Zero(m_);
  }

  static double norm(const BlockMatrix& a) {
    double s = 0;
    for (auto& m : a) s += m.squaredNorm();
    return std::sqrt(s);
  }

  double inner(const BlockMatrix& a, const BlockMatrix& b) const {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
    return s;
  }

  BlockMatrix add(const BlockMatrix& a, const BlockMatrix& b) const {
    BlockMatrix out = a;
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
    return out;
  }

  BlockMatrix sub(const BlockMatrix& a, const BlockMatrix& b) const {
    BlockMatrix out = a;
    for (std::size_t k = 0; k < a.size(); ++k) out[k] -= b[k];
    return out;
  }

  static BlockMatrix scale(const BlockMatrix& a, double s) {
    BlockMatrix out = a;
    for (auto& m : out) m *= s;
    return out;
  }

  BlockMatrix mul(const BlockMatrix& a, const BlockMatrix& b) const {
    BlockMatrix out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      out[k] = diag(k) ? MatrixXd(a[k].cwiseProduct(b[k])) : MatrixXd(a[k] * b[k]);
    return out;
  }

  BlockMatrix mul3(const BlockMatrix& a, const BlockMatrix& b, const BlockMatrix& c) const {
    return mul(mul(a, b), c);
  }

  BlockMatrix inverse(const BlockMatrix& a) const {
    BlockMatrix out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (diag(k)) {
        out[k] = a[k].cwiseInverse();
      } else {
        Eigen::LLT<MatrixXd> llt(a[k]);
        out[k] = llt.solve(MatrixXd::Identity(a[k].rows(), a[k].cols()));
        out[k] = 0.5 * (out[k] + out[k].transpose()).eval();
      }
    }
    return out;
  }

  BlockMatrix symmetrize(BlockMatrix a) const {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!diag(k)) a[k] = 0.5 * (a[k] + a[k].transpose()).eval();
    return a;
  }

  VectorXd apply_A(const BlockMatrix& X) const {
    VectorXd out(m_);
    for (int k = 0; k < m_; ++k) {
      double s = 0;
      for (auto& e : expanded_[k]) s += e.v * (diag(e.block) ? X[e.block](e.a, 0) : X[e.block](e.b, e.a));
      out[k] = s;
    }
    return out;
  }

  BlockMatrix apply_At(const VectorXd& y) const {
    BlockMatrix out = zeros();
    for (int k = 0; k < m_; ++k)
      for (auto& e : expanded_[k]) {
        if (diag(e.block)) out[e.block](e.a, 0) += y[k] * e.v;
        else out[e.block](e.a, e.b) += y[k] * e.v;
      }
    return out;
  }

  // O_kl = tr(A_k X A_l Z⁻¹)
  MatrixXd schur(const BlockMatrix& Zi) const {
    MatrixXd O = MatrixXd::Zero(m_, m_);
    for (int k = 0; k < m_; ++k)
      for (int l = k; l < m_; ++l) {
        double s = 0;
        for (auto& e : expanded_[k])
          for (auto& f : expanded_[l]) {
            if (e.block != f.block) continue;
            if (diag(e.block)) {
              if (e.a == f.a) s += e.v * f.v * X_[e.block](e.a, 0) * Zi[e.block](e.a, 0);
            } else {
              s += e.v * f.v * X_[e.block](e.b, f.a) * Zi[e.block](f.b, e.a);
            }
          }
        O(k, l) = O(l, k) = s;
      }
    return O;
  }

  struct Step {
    BlockMatrix dX;
    VectorXd dy;
    BlockMatrix dZ;
  };

  Step direction(const Eigen::LDLT<MatrixXd>& ldlt, const BlockMatrix& Zi, const VectorXd& rp, const BlockMatrix& Rd,
                 const BlockMatrix& base, const BlockMatrix& second, double sigma, double mu) const {
    BlockMatrix target = sub(add(base, scale(Zi, sigma * mu)), second);
    VectorXd rhs = apply_A(target) - rp;
    VectorXd dy = ldlt.solve(rhs);
    BlockMatrix dZ = add(apply_At(dy), Rd);
    BlockMatrix dX = symmetrize(sub(sub(add(scale(Zi, sigma * mu), scale(X_, -1)), mul3(X_, dZ, Zi)), second));
    return {dX, dy, dZ};
  }

  double max_step(const BlockMatrix& X, const BlockMatrix& dX) const {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < X.size(); ++k) {
      if (diag(k)) {
        for (Eigen::Index i = 0; i < X[k].rows(); ++i)
          if (dX[k](i, 0) < 0) alpha = std::min(alpha, -X[k](i, 0) / dX[k](i, 0));
      } else {
        Eigen::LLT<MatrixXd> llt(X[k]);
        MatrixXd Li = llt.matrixL().solve(MatrixXd::Identity(X[k].rows(), X[k].cols()));
        MatrixXd S = Li * dX[k] * Li.transpose();
        S = 0.5 * (S + S.transpose()).eval();
        double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(S, Eigen::EigenvaluesOnly).eigenvalues()(0);
        if (lmin < 0) alpha = std::min(alpha, -1 / lmin);
      }
    }
    return alpha;
  }

  const Problem& p_;
  Options opt_;
  int m_;
  int n_total_ = 0;
  std::vector<std::vector<Expanded>> expanded_;
  VectorXd b_;
  BlockMatrix Cm_;
  BlockMatrix X_, Z_;
  VectorXd y_;
};

}  // namespace

Result solve(const Problem& problem, const Options& options) { return Solver(problem, options).run(); }

}  // namespace dpt::sdp
