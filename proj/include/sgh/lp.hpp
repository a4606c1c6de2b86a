#pragma once

#include <vector>

namespace sgh::lp {

/// maximize c^T x  subject to  A x <= b,  x >= 0.
struct Problem {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  /// For infeasible problems: y >= 0 with A^T y >= 0 and b^T y < 0.
  std::vector<double> farkas;
};

/// Dense two-phase simplex with Bland's pivoting rule.
///
/// Meant for small problems (a handful of columns, a few thousand rows).
/// Throws SolverError when the pivot budget is exhausted.
Solution solve(const Problem& problem, double eps = 1e-9);

}  // namespace sgh::lp
