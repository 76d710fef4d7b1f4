#pragma once

#include <cmath>
#include <optional>
#include <span>

#include "cheeger/errors.hpp"

namespace cheeger {

// Exponent pair (N, q). The ratio perimeter / volume^{1/q} depends on the domain
// only for 0 < q < N/(N-1); for N = 1 any q > 0 is allowed, including q = +inf
// with the convention 1/q = 0.
struct Exponent {
  int N = 2;
  double q = 1.0;

  // Validating factory; throws InvalidExponentError outside the window.
  static Exponent make(int N, double q);
  double inv_q() const { return std::isinf(q) ? 0.0 : 1.0 / q; }
};

// Volume of the N-dimensional unit ball.
double unit_ball_volume(int N);

// N * omega_N^{1-1/q} * R^{N-1-N/q}: the exact ratio for the ball B_R.
double hq_ball(const Exponent& e, double R);

// Value of the ratio at the endpoint q = N/(N-1): the sharp isoperimetric
// constant N * omega_N^{1/N}, independent of the domain. N = 1 gives 2.
double q_limit_value(int N);

// phi(t) = (a + t b) / (c + t^beta d)^{1/beta} on t > 0.
struct PhiParams {
  double a = 0.0, b = 0.0;  // >= 0
  double c = 1.0, d = 1.0;  // > 0
  double beta = 1.0;        // > 0
};

enum class PhiAttainment {
  interior,             // beta < 1, a,b > 0: attained at t_beta
  not_attained,         // beta >= 1: infimum approached at t -> 0 or t -> inf only
  boundary_degenerate,  // beta < 1 with a = 0 or b = 0: infimum 0 in the limit
};

struct PhiMinimum {
  double value = 0.0;
  std::optional<double> minimizer;  // t_beta when attained
  PhiAttainment attainment = PhiAttainment::interior;
};

PhiMinimum phi_beta_min(const PhiParams& p);

// Ratio constant of a pairwise-disjoint union from its components: the minimum
// for q >= 1, the decreasing power-mean combination for q < 1 (0 if any
// component vanishes).
double combine_disjoint(std::span<const double> values, const Exponent& e);

// Planar two-ball configuration: minimize the joint ratio over one ball of
// radius r1 <= r inside the small disk and one of radius r2 <= R inside the
// large one.
struct TwoBallResult {
  double value = 0.0;
  double r1 = 0.0, r2 = 0.0;
  bool analytic = false;  // closed-form branch (q = 1/2, r/R below the threshold)
};

// Joint ratio 2 pi (r1+r2) / (pi (r1^2+r2^2))^{1/q}; (0,0) is excluded.
double two_ball_ratio(double r1, double r2, double q);

TwoBallResult two_ball_h(double r, double R, double q);

// r/R threshold below which the q = 1/2 minimizer is exactly (0, R).
double two_ball_analytic_threshold();

// Dense scan of the joint ratio over the inclusive (cells+1)^2 grid on
// [0,r] x [0,R]; ties broken by the lowest flattened index, so the parallel and
// serial versions agree bit-for-bit.
struct GridMinimum {
  double value = 0.0;
  double t = 0.0, s = 0.0;
};
GridMinimum two_ball_grid_scan(double r, double R, double q, int cells);
GridMinimum two_ball_grid_scan_serial(double r, double R, double q, int cells);

// Combination of the two exact ball values for q < 1: an upper bound for the
// union's sharp Poincare constant, strictly below the union's ratio constant.
double lambda_upper_proxy_two_balls(double r, double R, double q);

// P/A^{1/q} = (P/A)^{N/q-(N-1)} * (P/A^{(N-1)/N})^{N-N/q}.
struct RatioDecomposition {
  double cheeger_factor = 0.0;
  double isop_factor = 0.0;
  double product = 0.0;
};
RatioDecomposition decompose_ratio(double P, double A, const Exponent& e);

// Lower bounds for the principal frequency: the classical (h1/2)^2 and the
// generalized hq^{2/(N/q-(N-1))} / C, with C built from the comparison constant.
struct SpectralBounds {
  double classical = 0.0;
  double generalized = 0.0;
};
SpectralBounds cheeger_spectral_bounds(double h1, double hq, const Exponent& e);

}  // namespace cheeger
