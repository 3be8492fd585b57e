#include "dpt/simplex.hpp"

#include <stdexcept>

namespace dpt::lp {

std::size_t LinearProgram::add_variable(bool free) {
  free_.push_back(free);
  return free_.size() - 1;
}

std::size_t LinearProgram::add_variables(std::size_t count, bool free) {
  std::size_t first = free_.size();
  free_.insert(free_.end(), count, free);
  return first;
}

std::size_t LinearProgram::add_constraint(std::vector<Term> terms, Sense sense, Rational rhs) {
  for (auto& t : terms)
    if (t.var >= free_.size()) throw std::out_of_range("constraint references unknown variable");
  rows_.push_back({std::move(terms), sense, std::move(rhs)});
  return rows_.size() - 1;
}

void LinearProgram::set_objective(std::vector<Term> terms, bool maximize) {
  for (auto& t : terms)
    if (t.var >= free_.size()) throw std::out_of_range("objective references unknown variable");
  objective_ = std::move(terms);
  maximize_ = maximize;
}

struct Solver {
  const LinearProgram& lp;
  std::size_t m = 0;
  std::size_t ncols = 0;
  std::size_t first_slack = 0;
  std::size_t first_art = 0;
  std::vector<std::vector<Rational>> T;
  std::vector<Rational> rhs;
  std::vector<std::size_t> basis;
  std::vector<std::size_t> init_col;
  std::vector<int> row_sign;
  std::vector<std::size_t> pos_col, neg_col;
  std::vector<Rational> z;
  Rational zval;
  std::vector<Rational> cost;

  explicit Solver(const LinearProgram& p) : lp(p) {}

  void build() {
    m = lp.rows_.size();
    std::size_t nstd = 0;
    pos_col.resize(lp.free_.size());
    neg_col.assign(lp.free_.size(), SIZE_MAX);
    for (std::size_t v = 0; v < lp.free_.size(); ++v) {
      pos_col[v] = nstd++;
      if (lp.free_[v]) neg_col[v] = nstd++;
    }
    std::size_t nslack = 0, nart = 0;
    row_sign.resize(m);
    std::vector<Sense> sense(m);
    for (std::size_t r = 0; r < m; ++r) {
      const auto& row = lp.rows_[r];
      row_sign[r] = row.rhs < 0 ? -1 : 1;
      sense[r] = row.sense;
      if (row_sign[r] < 0 && row.sense != Sense::eq) sense[r] = row.sense == Sense::le ? Sense::ge : Sense::le;
      if (sense[r] != Sense::eq) ++nslack;
      if (sense[r] != Sense::le) ++nart;
    }
    first_slack = nstd;
    first_art = nstd + nslack;
    ncols = first_art + nart;
    T.assign(m, std::vector<Rational>(ncols));
    rhs.resize(m);
    basis.resize(m);
    init_col.resize(m);
    std::size_t s = first_slack, a = first_art;
    for (std::size_t r = 0; r < m; ++r) {
      const auto& row = lp.rows_[r];
      for (auto& t : row.terms) {
        Rational c = row_sign[r] > 0 ? t.coef : Rational(-t.coef);
        T[r][pos_col[t.var]] += c;
        if (neg_col[t.var] != SIZE_MAX) T[r][neg_col[t.var]] -= c;
      }
      rhs[r] = row_sign[r] > 0 ? row.rhs : Rational(-row.rhs);
      if (sense[r] == Sense::le) {
        T[r][s] = 1;
        basis[r] = init_col[r] = s++;
      } else {
        if (sense[r] == Sense::ge) T[r][s++] = -1;
        T[r][a] = 1;
        basis[r] = init_col[r] = a++;
      }
    }
  }

  void compute_z() {
    z.assign(ncols, Rational(0));
    zval = 0;
    for (std::size_t r = 0; r < m; ++r) {
      const Rational& cb = cost[basis[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < ncols; ++j)
        if (T[r][j] != 0) z[j] += cb * T[r][j];
      zval += cb * rhs[r];
    }
    for (std::size_t j = 0; j < ncols; ++j) z[j] -= cost[j];
  }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = 1 / T[pr][pc];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < ncols; ++j)
      if (T[pr][j] != 0) {
        T[pr][j] *= inv;
        nz.push_back(j);
      }
    rhs[pr] *= inv;
    Rational f;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr || T[r][pc] == 0) continue;
      f = T[r][pc];
      for (std::size_t j : nz) T[r][j] -= f * T[pr][j];
      rhs[r] -= f * rhs[pr];
    }
    if (z[pc] != 0) {
      f = z[pc];
      for (std::size_t j : nz) z[j] -= f * T[pr][j];
      zval -= f * rhs[pr];
    }
    basis[pr] = pc;
  }

  // Returns false if unbounded.
  bool optimize(std::size_t allowed) {
    bool bland = false;
    int degenerate_run = 0;
    Rational ratio, best;
    for (;;) {
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (z[j] >= 0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter == SIZE_MAX || z[j] < z[enter]) enter = j;
      }
      if (enter == SIZE_MAX) return true;
      std::size_t leave = SIZE_MAX;
      for (std::size_t r = 0; r < m; ++r) {
        if (T[r][enter] <= 0) continue;
        ratio = rhs[r] / T[r][enter];
        if (leave == SIZE_MAX || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == SIZE_MAX) return false;
      if (best == 0) {
        if (++degenerate_run > 30) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }

  Solution run() {
    build();
    Solution sol;
    cost.assign(ncols, Rational(0));
    for (std::size_t j = first_art; j < ncols; ++j) cost[j] = -1;
    compute_z();
    optimize(ncols);
    if (zval != 0) {
      sol.status = Status::infeasible;
      return sol;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j)
        if (T[r][j] != 0) {
          pivot(r, j);
          break;
        }
    }
    cost.assign(ncols, Rational(0));
    int dir = lp.maximize_ ? 1 : -1;
    for (auto& t : lp.objective_) {
      cost[pos_col[t.var]] += dir * t.coef;
      if (neg_col[t.var] != SIZE_MAX) cost[neg_col[t.var]] -= dir * t.coef;
    }
    compute_z();
    if (!optimize(first_art)) {
      sol.status = Status::unbounded;
      return sol;
    }
    sol.status = Status::optimal;
    std::vector<Rational> xstd(ncols);
    for (std::size_t r = 0; r < m; ++r) xstd[basis[r]] = rhs[r];
    sol.values.resize(lp.free_.size());
    for (std::size_t v = 0; v < lp.free_.size(); ++v) {
      sol.values[v] = xstd[pos_col[v]];
      if (neg_col[v] != SIZE_MAX) sol.values[v] -= xstd[neg_col[v]];
    }
    sol.objective = dir * zval;
    sol.duals.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      Rational y = 0;
      for (std::size_t r = 0; r < m; ++r)
        if (cost[basis[r]] != 0 && T[r][init_col[k]] != 0) y += cost[basis[r]] * T[r][init_col[k]];
      sol.duals[k] = dir * row_sign[k] * y;
    }
    return sol;
  }
};

Solution solve(const LinearProgram& program) { return Solver(program).run(); }

}  // namespace dpt::lp
