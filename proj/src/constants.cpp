#include "cheeger/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cheeger/closed_forms.hpp"

namespace cheeger {

double talenti_limit(int N) {
  if (N < 2) throw PreconditionError("talenti_limit requires N >= 2");
  return 1.0 / q_limit_value(N);
}

namespace {

void check_moser_range(int N, double p, double q) {
  if (N < 2) throw PreconditionError("iteration constants require N >= 2");
  if (!(p >= 1.0) || !(p < std::min(2.0, static_cast<double>(N))))
    throw PreconditionError("gradient exponent must satisfy 1 <= p < min(2, N)");
  const double pstar = (p < N) ? N * p / (N - p) : std::numeric_limits<double>::infinity();
  if (!(q >= p) || !(q <= pstar))
    throw PreconditionError("integrability exponent must satisfy p <= q <= Np/(N-p)");
}

}  // namespace

double A_const(int N, double p, double q) {
  check_moser_range(N, p, q);
  const double pstar = N * p / (N - p);
  const double f1 = (p - 1.0) / q * (N * (N - p) / (p * p)) * std::log(pstar / p);
  const double f2 = (static_cast<double>(N) / p) * ((p - 1.0) / q) * std::log(q / p);
  return std::exp(f1) * std::exp(f2);
}

SeriesInterval B_const(int N, double p, double q, int truncation) {
  check_moser_range(N, p, q);
  if (truncation < 1) throw PreconditionError("truncation must be at least 1");
  const double x = 1.0 - 1.0 / N;
  double partial = 0.0;
  double xi = 1.0;
  for (int i = 0; i < truncation; ++i) {
    partial += (i + 2) * xi;
    xi *= x;
  }
  // Exact tail: sum_{i>=T} (i+2) x^i = x^T ((T+2) - (T+1) x) / (1-x)^2.
  const double tail = xi * ((truncation + 2) - (truncation + 1) * x) / ((1 - x) * (1 - x));
  SeriesInterval out;
  out.lower = std::exp(p / q * partial * std::numbers::ln2);
  out.upper = std::exp(p / q * (partial + tail) * std::numbers::ln2);
  return out;
}

double B_closed_form(int N, double p, double q) {
  check_moser_range(N, p, q);
  return std::exp2(p * N * (N + 1.0) / q);
}

double moser_constant(int N, double q) {
  if (N < 2) throw PreconditionError("moser_constant requires N >= 2");
  const double qmax = static_cast<double>(N) / (N - 1);
  if (!(q >= 1.0) || !(q < qmax))
    throw PreconditionError("moser_constant requires 1 <= q < N/(N-1)");
  return B_closed_form(N, 1.0, q) * std::pow(4.0 * talenti_limit(N), static_cast<double>(N) / q);
}

ComparisonConstants comparison_constants(int N, double q) {
  const Exponent e = Exponent::make(N, q);
  ComparisonConstants out;
  if (e.q == 1.0) {
    out.lower = 1.0;
    out.upper = 1.0;
    out.two_sided = true;
    return out;
  }
  const double sharp = std::pow(q_limit_value(N), N - N * e.inv_q());
  if (e.q > 1.0) {
    out.lower = sharp;
    out.upper = 3.0 * std::exp2(N) * moser_constant(N, q);
    out.two_sided = true;
  } else {
    out.upper = sharp;
    out.two_sided = false;
  }
  return out;
}

ConstantBundle constant_bundle(int N, double q) {
  const ComparisonConstants cc = comparison_constants(N, q);
  ConstantBundle b;
  b.N = N;
  b.q = q;
  b.talenti = talenti_limit(N);
  b.C_lower = cc.lower;
  b.C_upper = cc.upper;
  b.two_sided = cc.two_sided;
  if (q >= 1.0) {
    b.A = A_const(N, 1.0, q);
    b.B = B_closed_form(N, 1.0, q);
    b.C_moser = moser_constant(N, q);
  }
  return b;
}

}  // namespace cheeger
