#include "cheeger/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "cheeger/constants.hpp"
#include "cheeger/nelder_mead.hpp"

namespace cheeger {

using std::numbers::pi;

Exponent Exponent::make(int N, double q) {
  if (N < 1) throw InvalidExponentError("dimension must be at least 1");
  if (N == 1) {
    if (!(q > 0)) throw InvalidExponentError("for N = 1 the exponent must satisfy q > 0");
    return {N, q};
  }
  const double qmax = static_cast<double>(N) / (N - 1);
  if (!(q > 0) || !(q < qmax) || std::isinf(q)) {
    std::ostringstream msg;
    msg << "q = " << q << " is invalid for N = " << N
        << ": the ratio perimeter/volume^(1/q) depends on the domain only for 0 < q < N/(N-1) = "
        << qmax << "; at q = N/(N-1) it equals the sharp isoperimetric constant "
        << q_limit_value(N) << " for every open set, and for larger q shrinking balls drive it to 0";
    throw InvalidExponentError(msg.str());
  }
  return {N, q};
}

double unit_ball_volume(int N) {
  if (N < 0) throw PreconditionError("dimension must be nonnegative");
  return std::pow(pi, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
}

double hq_ball(const Exponent& e, double R) {
  if (!(R > 0)) throw PreconditionError("ball radius must be positive");
  const double iq = e.inv_q();
  return e.N * std::pow(unit_ball_volume(e.N), 1.0 - iq) * std::pow(R, e.N - 1 - e.N * iq);
}

double q_limit_value(int N) {
  if (N < 1) throw PreconditionError("dimension must be at least 1");
  return N * std::pow(unit_ball_volume(N), 1.0 / N);
}

PhiMinimum phi_beta_min(const PhiParams& p) {
  if (!(p.c > 0) || !(p.d > 0)) throw PreconditionError("phi requires c > 0 and d > 0");
  if (p.a < 0 || p.b < 0) throw PreconditionError("phi requires a, b >= 0");
  if (!(p.beta > 0)) throw PreconditionError("phi requires beta > 0");

  const double ib = 1.0 / p.beta;
  if (p.beta >= 1.0) {
    PhiMinimum out;
    out.value = std::min(p.a / std::pow(p.c, ib), p.b / std::pow(p.d, ib));
    out.attainment = PhiAttainment::not_attained;
    return out;
  }
  if (p.a == 0.0 || p.b == 0.0) {
    PhiMinimum out;
    out.value = 0.0;
    out.attainment = PhiAttainment::boundary_degenerate;
    return out;
  }
  const double ex = p.beta / (1.0 - p.beta);
  const double sum = std::pow(std::pow(p.c, ib) / p.a, ex) + std::pow(std::pow(p.d, ib) / p.b, ex);
  PhiMinimum out;
  out.value = std::pow(sum, (p.beta - 1.0) / p.beta);
  out.minimizer = std::pow((p.a / p.c) * (p.d / p.b), 1.0 / (1.0 - p.beta));
  out.attainment = PhiAttainment::interior;
  return out;
}

double combine_disjoint(std::span<const double> values, const Exponent& e) {
  if (values.empty()) throw PreconditionError("combine_disjoint needs at least one component");
  for (double v : values)
    if (!(v >= 0)) throw PreconditionError("component constants must be nonnegative");

  if (e.q >= 1.0) return *std::min_element(values.begin(), values.end());

  double sum = 0.0;
  const double ex = e.q / (1.0 - e.q);
  for (double v : values) {
    if (v == 0.0) return 0.0;
    sum += std::pow(v, -ex);
  }
  return std::pow(sum, -(1.0 - e.q) / e.q);
}

double two_ball_ratio(double r1, double r2, double q) {
  const double a = pi * (r1 * r1 + r2 * r2);
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * pi * (r1 + r2) / std::pow(a, 1.0 / q);
}

double two_ball_analytic_threshold() { return (std::sqrt(7.0) - 2.0) / 3.0; }

namespace {

GridMinimum grid_scan_impl(double r, double R, double q, int cells, bool parallel) {
  const int n = cells + 1;
  std::vector<double> row_best(n, std::numeric_limits<double>::infinity());
  std::vector<int> row_arg(n, 0);

#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n; ++i) {
    const double t = r * i / cells;
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int jdx = 0; jdx < n; ++jdx) {
      if (i == 0 && jdx == 0) continue;
      const double s = R * jdx / cells;
      const double v = two_ball_ratio(t, s, q);
      if (v < best) {
        best = v;
        arg = jdx;
      }
    }
    row_best[i] = best;
    row_arg[i] = arg;
  }

  GridMinimum out;
  out.value = std::numeric_limits<double>::infinity();
  int bi = 0;
  for (int i = 0; i < n; ++i) {
    if (row_best[i] < out.value) {
      out.value = row_best[i];
      bi = i;
    }
  }
  out.t = r * bi / cells;
  out.s = R * row_arg[bi] / cells;
  return out;
}

}  // namespace

GridMinimum two_ball_grid_scan(double r, double R, double q, int cells) {
  return grid_scan_impl(r, R, q, cells, true);
}

GridMinimum two_ball_grid_scan_serial(double r, double R, double q, int cells) {
  return grid_scan_impl(r, R, q, cells, false);
}

TwoBallResult two_ball_h(double r, double R, double q) {
  if (!(r > 0) || !(R > 0) || r > R) throw PreconditionError("need 0 < r <= R");
  if (!(q > 0) || !(q < 2)) throw PreconditionError("need 0 < q < 2 in the plane");

  if (q == 0.5 && r / R < two_ball_analytic_threshold()) {
    TwoBallResult out;
    out.value = 2.0 / (pi * R * R * R);
    out.r1 = 0.0;
    out.r2 = R;
    out.analytic = true;
    return out;
  }

  const GridMinimum g = two_ball_grid_scan(r, R, q, 2000);

  auto objective = [&](std::span<const double> x) {
    const double t = std::clamp(x[0], 0.0, r);
    const double s = std::clamp(x[1], 0.0, R);
    return two_ball_ratio(t, s, q);
  };
  std::vector<double> x0{g.t, g.s};
  NelderMeadOptions opt;
  opt.max_evals = 4000;
  opt.tol_rel = 1e-13;
  opt.init_step = 0.75 * R / 2000;
  const NelderMeadResult nm = nelder_mead(objective, x0, opt);

  TwoBallResult out;
  if (nm.fx < g.value) {
    out.r1 = std::clamp(nm.x[0], 0.0, r);
    out.r2 = std::clamp(nm.x[1], 0.0, R);
  } else {
    out.r1 = g.t;
    out.r2 = g.s;
  }
  if (out.r1 < 1e-12 * R) out.r1 = 0.0;
  if (out.r2 < 1e-12 * R) out.r2 = 0.0;
  out.value = two_ball_ratio(out.r1, out.r2, q);
  out.analytic = false;
  return out;
}

double lambda_upper_proxy_two_balls(double r, double R, double q) {
  if (!(q > 0) || !(q < 1)) throw PreconditionError("the proxy combination requires 0 < q < 1");
  if (!(r > 0) || !(R > 0)) throw PreconditionError("radii must be positive");
  const Exponent e = Exponent::make(2, q);
  const double vals[2] = {hq_ball(e, r), hq_ball(e, R)};
  return combine_disjoint(vals, e);
}

RatioDecomposition decompose_ratio(double P, double A, const Exponent& e) {
  if (!(P > 0) || !(A > 0)) throw PreconditionError("perimeter and area must be positive");
  const double iq = e.inv_q();
  const double e1 = e.N * iq - (e.N - 1);
  const double e2 = e.N - e.N * iq;
  RatioDecomposition out;
  out.cheeger_factor = std::pow(P / A, e1);
  out.isop_factor = std::pow(P / std::pow(A, (e.N - 1.0) / e.N), e2);
  out.product = out.cheeger_factor * out.isop_factor;
  return out;
}

SpectralBounds cheeger_spectral_bounds(double h1, double hq, const Exponent& e) {
  if (h1 < 0 || hq < 0) throw PreconditionError("constants must be nonnegative");
  SpectralBounds out;
  out.classical = 0.25 * h1 * h1;
  const double eq = e.N * e.inv_q() - (e.N - 1);
  const double upper = comparison_constants(e.N, e.q).upper;
  out.generalized = std::pow(hq, 2.0 / eq) / (4.0 * std::pow(upper, 2.0 / eq));
  return out;
}

}  // namespace cheeger
