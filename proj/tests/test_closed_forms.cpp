#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cheeger/closed_forms.hpp"

using namespace cheeger;
using std::numbers::pi;

namespace {
double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
}

TEST_CASE("Exponent: validity window") {
  CHECK_NOTHROW(Exponent::make(2, 1.0));
  CHECK_NOTHROW(Exponent::make(2, 1.9999));
  CHECK_NOTHROW(Exponent::make(2, 0.01));
  CHECK_THROWS_AS(Exponent::make(2, 2.0), InvalidExponentError);
  CHECK_THROWS_AS(Exponent::make(2, 2.5), InvalidExponentError);
  CHECK_THROWS_AS(Exponent::make(2, 0.0), InvalidExponentError);
  CHECK_THROWS_AS(Exponent::make(3, 1.5), InvalidExponentError);
  CHECK_NOTHROW(Exponent::make(3, 1.49));
  CHECK_NOTHROW(Exponent::make(1, std::numeric_limits<double>::infinity()));
}

TEST_CASE("unit_ball_volume") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
  CHECK(unit_ball_volume(4) == doctest::Approx(pi * pi / 2.0).epsilon(1e-14));
}

TEST_CASE("hq_ball: exact values") {
  CHECK(hq_ball(Exponent::make(2, 1.0), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(hq_ball(Exponent::make(2, 0.5), 1.0) == doctest::Approx(2.0 / pi).epsilon(1e-14));
  CHECK(hq_ball(Exponent::make(3, 1.0), 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  // perimeter/area route as an independent oracle in the plane
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const double q = 0.1 + 1.8 * u01(rng);
    const double R = 0.2 + 3.0 * u01(rng);
    const Exponent e = Exponent::make(2, q);
    const double direct = 2 * pi * R / std::pow(pi * R * R, 1.0 / q);
    CHECK(hq_ball(e, R) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("hq_ball: scaling law is exact") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 50; ++k) {
    const int N = 2 + static_cast<int>(u01(rng) * 3);
    const double qmax = static_cast<double>(N) / (N - 1);
    const double q = 0.05 + (qmax - 0.1) * u01(rng);
    const Exponent e = Exponent::make(N, q);
    const double R = 0.3 + 2.0 * u01(rng);
    const double t = 0.2 + 4.0 * u01(rng);
    const double expo = N - 1 - N / q;
    CHECK(hq_ball(e, t * R) ==
          doctest::Approx(std::pow(t, expo) * hq_ball(e, R)).epsilon(1e-12));
  }
}

TEST_CASE("q_limit_value") {
  CHECK(q_limit_value(2) == doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-14));
  CHECK(q_limit_value(3) == doctest::Approx(3.0 * std::cbrt(4.0 * pi / 3.0)).epsilon(1e-14));
  CHECK(q_limit_value(2) == doctest::Approx(3.544908).epsilon(1e-6));
  CHECK(q_limit_value(3) == doctest::Approx(4.835976).epsilon(1e-6));
  CHECK(q_limit_value(1) == doctest::Approx(2.0).epsilon(1e-14));
  // matches the N = 1, q = inf ball value
  CHECK(hq_ball(Exponent::make(1, std::numeric_limits<double>::infinity()), 3.7) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("phi_beta_min: examples") {
  {
    const PhiMinimum m = phi_beta_min({1, 1, 1, 1, 0.5});
    CHECK(m.attainment == PhiAttainment::interior);
    CHECK(*m.minimizer == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.value == doctest::Approx(0.5).epsilon(1e-12));
  }
  {
    const PhiMinimum m = phi_beta_min({1, 2, 1, 1, 1.0});
    CHECK(m.attainment == PhiAttainment::not_attained);
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(m.minimizer.has_value());
  }
  {
    const PhiMinimum m = phi_beta_min({2, 1, 1, 1, 0.5});
    CHECK(*m.minimizer == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(m.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const double direct = (2.0 + 4.0 * 1.0) / std::pow(1.0 + std::sqrt(4.0) * 1.0, 2.0);
    CHECK(m.value == doctest::Approx(direct).epsilon(1e-12));
  }
  {
    const PhiMinimum m = phi_beta_min({0, 1, 1, 1, 0.5});
    CHECK(m.attainment == PhiAttainment::boundary_degenerate);
    CHECK(m.value == 0.0);
  }
}

TEST_CASE("phi_beta_min: log-grid never undercuts the closed form") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    PhiParams p;
    p.a = 0.5 + 2 * u01(rng);
    p.b = 0.5 + 2 * u01(rng);
    p.c = 0.5 + 2 * u01(rng);
    p.d = 0.5 + 2 * u01(rng);
    p.beta = (trial % 2 == 0) ? 0.25 + 0.7 * u01(rng) : 1.0 + u01(rng);
    const PhiMinimum m = phi_beta_min(p);
    for (int k = 0; k <= 600; ++k) {
      const double t = std::pow(10.0, -6.0 + 12.0 * k / 600.0);
      const double v = (p.a + t * p.b) / std::pow(p.c + std::pow(t, p.beta) * p.d, 1.0 / p.beta);
      CHECK(v >= m.value * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("combine_disjoint: rules and zero component") {
  const Exponent q1 = Exponent::make(2, 1.0);
  const double v12[2] = {2.0, 3.0};
  CHECK(combine_disjoint(v12, q1) == 2.0);

  const Exponent qh = Exponent::make(2, 0.5);
  const double v22[2] = {2.0, 2.0};
  CHECK(combine_disjoint(v22, qh) == doctest::Approx(1.0).epsilon(1e-14));
  const double v50[2] = {5.0, 0.0};
  CHECK(combine_disjoint(v50, qh) == 0.0);

  CHECK_THROWS_AS(combine_disjoint({}, q1), PreconditionError);
}

TEST_CASE("combine_disjoint: q<1 is symmetric, monotone, below components") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 200; ++k) {
    const double q = 0.15 + 0.8 * u01(rng);
    const Exponent e = Exponent::make(2, q);
    const double x = 0.2 + 5 * u01(rng);
    const double y = 0.2 + 5 * u01(rng);
    const double xy[2] = {x, y};
    const double yx[2] = {y, x};
    CHECK(combine_disjoint(xy, e) == doctest::Approx(combine_disjoint(yx, e)).epsilon(1e-15));
    const double bigger[2] = {x * 1.5, y};
    CHECK(combine_disjoint(bigger, e) >= combine_disjoint(xy, e));
    CHECK(combine_disjoint(xy, e) < std::min(x, y));
  }
}

TEST_CASE("two_ball_h: analytic branch and corner cases") {
  {
    const TwoBallResult tb = two_ball_h(0.1, 1.0, 0.5);
    CHECK(tb.analytic);
    CHECK(tb.value == doctest::Approx(2.0 / pi).epsilon(1e-12));
    CHECK(tb.r1 == 0.0);
    CHECK(tb.r2 == 1.0);
  }
  {
    // equal radii: threshold fails, grid branch; corner (1,1) wins
    const TwoBallResult tb = two_ball_h(1.0, 1.0, 0.5);
    CHECK_FALSE(tb.analytic);
    CHECK(tb.value == doctest::Approx(1.0 / pi).epsilon(1e-9));
    CHECK(tb.r1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(tb.r2 == doctest::Approx(1.0).epsilon(1e-6));
  }
  {
    // q = 1: single big ball
    const TwoBallResult tb = two_ball_h(0.1, 1.0, 1.0);
    CHECK(tb.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(tb.r1 == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(tb.r2 == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK_THROWS_AS(two_ball_h(2.0, 1.0, 0.5), PreconditionError);
}

TEST_CASE("two_ball_h: analytic and grid branches agree under the radius restriction") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 6; ++k) {
    const double R = 0.5 + 2.0 * u01(rng);
    const double r = R * two_ball_analytic_threshold() * (0.05 + 0.9 * u01(rng));
    const double analytic = 2.0 / (pi * R * R * R);
    const GridMinimum g = two_ball_grid_scan(r, R, 0.5, 2000);
    CHECK(g.value == doctest::Approx(analytic).epsilon(1e-6));
    CHECK(g.t == 0.0);
    CHECK(g.s == doctest::Approx(R).epsilon(1e-12));
  }
}

TEST_CASE("two_ball grid kernel: serial and parallel agree exactly") {
  for (double q : {0.5, 0.8, 1.0, 1.5}) {
    const GridMinimum a = two_ball_grid_scan(0.7, 1.3, q, 401);
    const GridMinimum b = two_ball_grid_scan_serial(0.7, 1.3, q, 401);
    CHECK(a.value == b.value);
    CHECK(a.t == b.t);
    CHECK(a.s == b.s);
  }
}

TEST_CASE("lambda_upper_proxy_two_balls") {
  // (1/(2000/pi) + 1/(2/pi))^{-1}
  const double expect = 1.0 / (pi / 2000.0 + pi / 2.0);
  CHECK(lambda_upper_proxy_two_balls(0.1, 1.0, 0.5) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(0.635984).epsilon(1e-6));
  CHECK(lambda_upper_proxy_two_balls(1.0, 1.0, 0.5) ==
        doctest::Approx(1.0 / pi).epsilon(1e-12));
  // vanishing small component approaches the single-ball value
  CHECK(lambda_upper_proxy_two_balls(1e-6, 1.0, 0.5) == doctest::Approx(2.0 / pi).epsilon(1e-9));
  CHECK_THROWS_AS(lambda_upper_proxy_two_balls(0.5, 1.0, 1.0), PreconditionError);
}

TEST_CASE("lambda proxy sits strictly below the two-ball value with the exact gap") {
  for (double r : {0.05, 0.1, 0.2}) {
    const double h = two_ball_h(r, 1.0, 0.5).value;
    const double proxy = lambda_upper_proxy_two_balls(r, 1.0, 0.5);
    CHECK(proxy < h);
    const double gap = (h - proxy) / h;
    const double exact = r * r * r / (1.0 + r * r * r);
    CHECK(gap == doctest::Approx(exact).epsilon(1e-9));
    if (r >= 0.05) CHECK(gap >= 1e-4);
  }
}

TEST_CASE("decompose_ratio: identity and unit cases") {
  {
    const RatioDecomposition d = decompose_ratio(2 * pi, pi, Exponent::make(2, 1.0));
    CHECK(d.cheeger_factor == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d.isop_factor == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.product == doctest::Approx(2.0).epsilon(1e-14));
  }
  CHECK(decompose_ratio(4, 1, Exponent::make(2, 1.5)).product ==
        doctest::Approx(4.0).epsilon(1e-14));

  std::mt19937_64 rng(53);
  for (int k = 0; k < 10000; ++k) {
    const double P = std::pow(10.0, -2 + 4 * u01(rng));
    const double A = std::pow(10.0, -2 + 4 * u01(rng));
    const double q = 0.1 + 1.8 * u01(rng);
    const Exponent e = Exponent::make(2, q);
    const double direct = P / std::pow(A, 1.0 / q);
    CHECK(decompose_ratio(P, A, e).product == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("cheeger_spectral_bounds") {
  const SpectralBounds unit = cheeger_spectral_bounds(2.0, 2.0, Exponent::make(2, 1.0));
  CHECK(unit.classical == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cheeger_spectral_bounds(2.0, 0.0, Exponent::make(2, 1.5)).generalized == 0.0);
  // exponent arithmetic: 2 / (2/q - 1) = 6 at q = 1.5
  CHECK(2.0 / (2.0 / 1.5 - 1.0) == doctest::Approx(6.0).epsilon(1e-14));
}
