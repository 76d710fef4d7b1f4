#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cheeger {

struct NelderMeadOptions {
  int max_evals = 20000;
  double tol_rel = 1e-8;    // relative spread of simplex values at convergence
  double init_step = 0.1;   // absolute per-coordinate step for the initial simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Derivative-free simplex descent with dimension-adaptive expansion and
// contraction coefficients, which keeps it usable for the high-dimensional
// vertex-coordinate objectives of the shape optimizer.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, const NelderMeadOptions& opt);

}  // namespace cheeger
