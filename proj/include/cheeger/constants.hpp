#pragma once

#include <optional>

#include "cheeger/errors.hpp"

namespace cheeger {

// Limit of the sharp Sobolev constant as the gradient exponent goes to 1:
// 1 / (N * omega_N^{1/N}), the reciprocal of the isoperimetric constant.
double talenti_limit(int N);

// Iteration product A_{N,p,q}; equals 1 exactly at p = 1.
double A_const(int N, double p, double q);

// Certified enclosure of a positive series limit: [partial-sum value, value
// with the exact geometric tail added].
struct SeriesInterval {
  double lower = 0.0;
  double upper = 0.0;
};

// Iteration product B_{N,p,q} = exp((p/q) * sum_{i>=0} (i+2) x^i * log 2) at
// x = 1 - 1/N, truncated after `truncation` terms with a closed-form tail.
SeriesInterval B_const(int N, double p, double q, int truncation);

// Full series value, sum (i+2) x^i = (2-x)/(1-x)^2 = N(N+1): 2^{p N(N+1)/q}.
double B_closed_form(int N, double p, double q);

// Limit of the local sup-bound constant as the gradient exponent goes to 1:
// B_{N,1,q} * (4 / (N omega_N^{1/N}))^{N/q}. Accepts q = 1 as boundary value.
double moser_constant(int N, double q);

// Coefficients comparing the generalized ratio constant against the classical
// one raised to N/q-(N-1). Two-sided for q > 1; for q < 1 only the upper
// coefficient exists (same formula as the q > 1 lower one, now an upper bound).
struct ComparisonConstants {
  std::optional<double> lower;  // present iff q >= 1
  double upper = 0.0;
  bool two_sided = false;
};
ComparisonConstants comparison_constants(int N, double q);

struct ConstantBundle {
  int N = 2;
  double q = 1.0;
  double talenti = 0.0;
  std::optional<double> A;
  std::optional<double> B;
  std::optional<double> C_moser;
  std::optional<double> C_lower;
  double C_upper = 0.0;
  bool two_sided = false;
};
ConstantBundle constant_bundle(int N, double q);

}  // namespace cheeger
