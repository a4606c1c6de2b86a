#include "sgh/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "sgh/errors.hpp"

namespace sgh::lp {

namespace {

// Dictionary form. Row i < m reads  x_{basic[i]} = d[i][cols] - sum_j d[i][j] x_{nonbasic[j]},
// row m is the objective and row m+1 the phase-one objective; both store the
// negated reduced costs, so a column with a negative entry improves.
// Variables 0..n-1 are structural, n..n+m-1 are slacks, -1 is the auxiliary.
class Tableau {
 public:
  Tableau(const Problem& p, double eps)
      : m_(p.b.size()), n_(p.c.size()), eps_(eps),
        d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)), basic_(m_), nonbasic_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = p.a[i][j];
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = p.b[i];
      basic_[i] = static_cast<long>(n_ + i);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      d_[m_][j] = -p.c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  Solution run() {
    Solution out;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < -eps_) {
      pivot(r, n_);
      if (!optimize(m_ + 1) || d_[m_ + 1][n_ + 1] < -eps_) {
        out.status = Status::infeasible;
        out.farkas = duals(m_ + 1);
        return out;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        std::size_t s = n_ + 1;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (std::abs(d_[i][j]) > eps_ && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
        }
        if (s <= n_) pivot(i, s);
      }
    }
    if (!optimize(m_)) {
      out.status = Status::unbounded;
      return out;
    }
    out.status = Status::optimal;
    out.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) {
        out.x[static_cast<std::size_t>(basic_[i])] = d_[i][n_ + 1];
      }
    }
    out.objective = d_[m_][n_ + 1];
    return out;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double factor = d_[i][s] * inv;
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n_ + 2; ++j) {
        if (j != s) d_[i][j] -= d_[r][j] * factor;
      }
      d_[i][s] = -factor;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) {
      if (j != s) d_[r][j] *= inv;
    }
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // Bland's rule: lowest-index improving column, lowest-index tied row.
  bool optimize(std::size_t objective_row) {
    const std::size_t budget = 50 * (m_ + n_ + 10) + 10000;
    for (std::size_t iter = 0; iter < budget; ++iter) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (objective_row == m_ && nonbasic_[j] == -1) continue;
        if (d_[objective_row][j] < -eps_ && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == n_ + 1) return true;
      std::size_t r = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][s] <= eps_) continue;
        if (r == m_) {
          r = i;
          continue;
        }
        const double lhs = d_[i][n_ + 1] / d_[i][s];
        const double rhs = d_[r][n_ + 1] / d_[r][s];
        if (lhs < rhs - eps_ || (lhs <= rhs + eps_ && basic_[i] < basic_[r])) r = i;
      }
      if (r == m_) return false;
      pivot(r, s);
    }
    throw SolverError("simplex pivot budget exhausted");
  }

  std::vector<double> duals(std::size_t objective_row) const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t j = 0; j <= n_; ++j) {
      if (nonbasic_[j] >= static_cast<long>(n_)) {
        y[static_cast<std::size_t>(nonbasic_[j]) - n_] = std::max(0.0, d_[objective_row][j]);
      }
    }
    return y;
  }

  std::size_t m_;
  std::size_t n_;
  double eps_;
  std::vector<std::vector<double>> d_;
  std::vector<long> basic_;
  std::vector<long> nonbasic_;
};

}  // namespace

Solution solve(const Problem& problem, double eps) {
  const std::size_t m = problem.b.size();
  const std::size_t n = problem.c.size();
  if (problem.a.size() != m) throw SolverError("constraint matrix and rhs disagree in size");
  for (const auto& row : problem.a) {
    if (row.size() != n) throw SolverError("constraint row has the wrong number of columns");
  }
  return Tableau(problem, eps).run();
}

}  // namespace sgh::lp
