#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cheeger/closed_forms.hpp"
#include "cheeger/constants.hpp"

using namespace cheeger;
using std::numbers::pi;

TEST_CASE("talenti_limit") {
  CHECK(talenti_limit(2) == doctest::Approx(1.0 / (2.0 * std::sqrt(pi))).epsilon(1e-14));
  CHECK(talenti_limit(2) == doctest::Approx(0.282095).epsilon(1e-6));
  CHECK(talenti_limit(3) == doctest::Approx(0.206783).epsilon(1e-6));
  double prev = talenti_limit(2);
  for (int n = 3; n <= 20; ++n) {
    CHECK(talenti_limit(n) < prev);
    prev = talenti_limit(n);
  }
}

TEST_CASE("A_const: unity at p = 1, two-factor cross-check") {
  CHECK(A_const(2, 1.0, 1.5) == 1.0);
  CHECK(A_const(3, 1.0, 1.2) == 1.0);
  {
    const int N = 3;
    const double p = 1.5, q = 2.0;
    const double pstar = N * p / (N - p);
    const double f1 = std::exp((p - 1) / q * N * (N - p) / (p * p) * std::log(pstar / p));
    const double f2 = std::exp(static_cast<double>(N) / p * (p - 1) / q * std::log(q / p));
    CHECK(A_const(N, p, q) == doctest::Approx(f1 * f2).epsilon(1e-13));
  }
  CHECK_THROWS_AS(A_const(2, 2.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(A_const(3, 1.5, 10.0), PreconditionError);
}

TEST_CASE("B_const: partial sums, tail enclosure, closed form") {
  // N = 2, p = 1, q = 1: series exponent 6, value 2^6 = 64
  CHECK(B_closed_form(2, 1.0, 1.0) == doctest::Approx(64.0).epsilon(1e-14));
  const SeriesInterval b60 = B_const(2, 1.0, 1.0, 60);
  CHECK(std::abs(b60.lower - 64.0) <= 1e-10);
  CHECK(b60.lower <= 64.0 * (1 + 1e-15));
  CHECK(b60.upper >= 64.0 * (1 - 1e-15));

  CHECK(B_closed_form(2, 1.0, 2.0 - 1e-9) == doctest::Approx(8.0).epsilon(1e-6));

  // monotone increasing partial sums, bounded by the closed form
  double prev = 0.0;
  for (int trunc : {1, 2, 5, 10, 20, 40, 60}) {
    const SeriesInterval b = B_const(2, 1.0, 1.0, trunc);
    CHECK(b.lower >= prev);
    CHECK(b.lower <= 64.0 * (1 + 1e-14));
    CHECK(b.upper >= b.lower);
    prev = b.lower;
  }
  for (int N : {2, 3, 5, 10}) {
    const SeriesInterval b = B_const(N, 1.0, 1.0, 60 * N);
    CHECK(b.lower == doctest::Approx(B_closed_form(N, 1.0, 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("B asymptotics: log2 B / N^2 approaches 1") {
  for (int N : {10, 20, 30}) {
    const double ratio = std::log2(B_closed_form(N, 1.0, 1.0)) / (static_cast<double>(N) * N);
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.1));
  }
  CHECK(std::log2(B_closed_form(30, 1.0, 1.0)) / 900.0 ==
        doctest::Approx(31.0 / 30.0).epsilon(1e-12));
}

TEST_CASE("moser_constant: examples and monotonicity") {
  const double c215 = moser_constant(2, 1.5);
  CHECK(c215 == doctest::Approx(16.0 * std::pow(2.0 / std::sqrt(pi), 4.0 / 3.0)).epsilon(1e-12));
  CHECK(c215 == doctest::Approx(18.796).epsilon(1e-3));
  CHECK(moser_constant(2, 1.0) == doctest::Approx(64.0 * 4.0 / pi).epsilon(1e-12));
  CHECK(moser_constant(2, 1.0) == doctest::Approx(81.487).epsilon(1e-4));
  CHECK(moser_constant(3, 1.1) > moser_constant(2, 1.1));
  CHECK_THROWS_AS(moser_constant(2, 2.5), PreconditionError);
}

TEST_CASE("comparison_constants: regimes") {
  {
    const ComparisonConstants c = comparison_constants(2, 1.0);
    CHECK(c.two_sided);
    CHECK(*c.lower == 1.0);
    CHECK(c.upper == 1.0);
  }
  {
    const ComparisonConstants c = comparison_constants(2, 1.5);
    CHECK(c.two_sided);
    CHECK(*c.lower == doctest::Approx(std::pow(2.0 * std::sqrt(pi), 2.0 / 3.0)).epsilon(1e-13));
    CHECK(*c.lower == doctest::Approx(2.324).epsilon(1e-3));
    CHECK(c.upper == doctest::Approx(12.0 * moser_constant(2, 1.5)).epsilon(1e-13));
    CHECK(c.upper == doctest::Approx(225.55).epsilon(1e-3));
    CHECK(*c.lower <= c.upper);
  }
  {
    const ComparisonConstants c = comparison_constants(2, 0.5);
    CHECK_FALSE(c.two_sided);
    CHECK_FALSE(c.lower.has_value());
    CHECK(c.upper == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-13));
    CHECK(c.upper == doctest::Approx(0.07958).epsilon(1e-3));
  }
  CHECK_THROWS_AS(comparison_constants(2, 2.0), InvalidExponentError);
}

TEST_CASE("lower comparison coefficient is an equality for balls") {
  for (int N : {2, 3, 4}) {
    const double qmax = static_cast<double>(N) / (N - 1);
    for (double frac : {0.3, 0.6, 0.9}) {
      const double q = 1.0 + (qmax - 1.0) * frac;
      if (q <= 1.0 || q >= qmax) continue;
      const Exponent e = Exponent::make(N, q);
      const ComparisonConstants c = comparison_constants(N, q);
      for (double R : {0.5, 1.0, 2.0}) {
        const double h1 = static_cast<double>(N) / R;  // ball value at q = 1
        const double lhs = *c.lower * std::pow(h1, static_cast<double>(N) / q - (N - 1));
        CHECK(lhs == doctest::Approx(hq_ball(e, R)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("exponent sanity: N/q - (N-1) lies in (0, 1) for 1 < q < N/(N-1)") {
  for (int N : {2, 3, 5}) {
    const double qmax = static_cast<double>(N) / (N - 1);
    for (double frac : {0.1, 0.5, 0.9}) {
      const double q = 1.0 + (qmax - 1.0) * frac;
      const double ex = N / q - (N - 1);
      CHECK(ex > 0.0);
      CHECK(ex < 1.0);
    }
    CHECK(static_cast<double>(N) / 1.0 - (N - 1) == 1.0);
  }
}

TEST_CASE("constant_bundle: fields by regime") {
  const ConstantBundle b15 = constant_bundle(2, 1.5);
  CHECK(b15.A.has_value());
  CHECK(*b15.A == 1.0);
  CHECK(b15.B.has_value());
  CHECK(b15.C_moser.has_value());
  CHECK(b15.C_lower.has_value());
  CHECK(b15.two_sided);
  CHECK(b15.talenti > 0);

  const ConstantBundle b05 = constant_bundle(2, 0.5);
  CHECK_FALSE(b05.A.has_value());
  CHECK_FALSE(b05.C_lower.has_value());
  CHECK_FALSE(b05.two_sided);
  CHECK(b05.C_upper > 0);
}
