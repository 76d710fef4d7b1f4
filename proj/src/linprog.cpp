#include "cheeger/linprog.hpp"

#include <cmath>
#include <limits>

namespace cheeger {

SimplexResult solve_simplex(const LinearProgram& lp) {
  const std::size_t m = lp.A.size();
  const std::size_t n = lp.c.size();
  const std::size_t cols = n + m + 1;

  // Tableau rows 0..m-1: [A | I | b]; row m: [-c | 0 | 0].
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = lp.A[i][j];
    t[i][n + i] = 1.0;
    t[i][cols - 1] = lp.b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -lp.c[j];

  const double eps = 1e-11;
  const std::size_t max_pivots = 60 * (m + n) + 2000;
  const std::size_t bland_after = 12 * (m + n) + 400;

  for (std::size_t iter = 0; iter < max_pivots; ++iter) {
    // Entering column.
    std::size_t enter = cols;
    if (iter < bland_after) {
      double best = -eps;
      for (std::size_t j = 0; j + 1 < cols; ++j)
        if (t[m][j] < best) {
          best = t[m][j];
          enter = j;
        }
    } else {
      for (std::size_t j = 0; j + 1 < cols; ++j)
        if (t[m][j] < -eps) {
          enter = j;
          break;
        }
    }
    if (enter == cols) break;  // optimal

    // Ratio test; ties broken by smallest basis index (Bland-safe).
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > eps) {
        const double ratio = t[i][cols - 1] / t[i][enter];
        if (ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 && (leave == m || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) return {};  // unbounded

    const double piv = t[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  SimplexResult res;
  res.ok = true;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t[i][cols - 1];
  res.objective = t[m][cols - 1];
  return res;
}

}  // namespace cheeger
