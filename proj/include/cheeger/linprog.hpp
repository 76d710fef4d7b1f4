#pragma once

#include <cstddef>
#include <vector>

namespace cheeger {

// max c·x  s.t.  A x <= b,  x >= 0,  with b >= 0 so the slack basis is feasible.
struct LinearProgram {
  LinearProgram(std::size_t m, std::size_t n)
      : A(m, std::vector<double>(n, 0.0)), b(m, 0.0), c(n, 0.0) {}
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  std::vector<double> c;
};

struct SimplexResult {
  bool ok = false;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense tableau simplex. Dantzig pricing with a switch to Bland's rule after a
// stall, so degenerate vertices cannot cycle. Sized for polygon-scale problems
// (a few hundred constraints).
SimplexResult solve_simplex(const LinearProgram& lp);

}  // namespace cheeger
