#include "cheeger/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cheeger {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  const double nd = static_cast<double>(n);

  // Gao-Han adaptive coefficients.
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / nd;
  const double gamma = 0.75 - 0.5 / nd;
  const double delta = 1.0 - 1.0 / nd;

  std::vector<std::vector<double>> x(n + 1, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> fx(n + 1);
  int evals = 0;
  auto eval = [&](std::span<const double> p) {
    ++evals;
    return f(p);
  };

  for (std::size_t i = 1; i <= n; ++i) x[i][i - 1] += opt.init_step;
  for (std::size_t i = 0; i <= n; ++i) fx[i] = eval(x[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  bool converged = false;

  while (evals < opt.max_evals) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];

    const double spread = std::abs(fx[worst] - fx[best]);
    if (spread <= opt.tol_rel * (std::abs(fx[best]) + 1e-300)) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += x[i][j];
    }
    for (double& c : centroid) c /= nd;

    for (std::size_t j = 0; j < n; ++j) trial[j] = centroid[j] + alpha * (centroid[j] - x[worst][j]);
    const double fr = eval(trial);

    if (fr < fx[best]) {
      for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + beta * (trial[j] - centroid[j]);
      const double fe = eval(trial2);
      if (fe < fr) {
        x[worst] = trial2;
        fx[worst] = fe;
      } else {
        x[worst] = trial;
        fx[worst] = fr;
      }
    } else if (fr < fx[second]) {
      x[worst] = trial;
      fx[worst] = fr;
    } else {
      const bool outside = fr < fx[worst];
      if (outside) {
        for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + gamma * (trial[j] - centroid[j]);
      } else {
        for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] - gamma * (centroid[j] - x[worst][j]);
      }
      const double fc = eval(trial2);
      if (fc < std::min(fr, fx[worst])) {
        x[worst] = trial2;
        fx[worst] = fc;
      } else {
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j)
            x[i][j] = x[best][j] + delta * (x[i][j] - x[best][j]);
          fx[i] = eval(x[i]);
          if (evals >= opt.max_evals) break;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fx[i] < fx[best]) best = i;

  NelderMeadResult res;
  res.x = x[best];
  res.fx = fx[best];
  res.evals = evals;
  res.converged = converged;
  return res;
}

}  // namespace cheeger
