#include "cheeger/smoothing.hpp"

#include <cmath>
#include <numbers>

namespace cheeger {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLNode[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGLWeight[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// Quadrature of the bump mollifier over its support ball, in polar coordinates.
// Weights are normalized by the same rule, so j_n stays a convex combination of
// gauge values and the sandwich bound is inherited exactly.
struct MollifierRule {
  std::vector<Point> offset;
  std::vector<double> weight;

  explicit MollifierRule(double radius) {
    using std::numbers::pi;
    offset.reserve(kGL * kGL);
    weight.reserve(kGL * kGL);
    double total = 0.0;
    for (int k = 0; k < kGL; ++k) {
      const double rho = 0.5 * radius * (kGLNode[k] + 1.0);
      const double u = rho / radius;
      const double bump = std::exp(-1.0 / (1.0 - u * u));
      for (int l = 0; l < kGL; ++l) {
        const double phi = pi * (kGLNode[l] + 1.0);
        const double w = kGLWeight[k] * kGLWeight[l] * rho * bump;
        offset.push_back({rho * std::cos(phi), rho * std::sin(phi)});
        weight.push_back(w);
        total += w;
      }
    }
    for (double& w : weight) w /= total;
  }
};

struct CenteredGauge {
  std::vector<HalfPlane> planes;

  double operator()(Point x) const {
    double g = 0.0;
    for (const HalfPlane& h : planes) g = std::max(g, dot(h.a, x) / h.b);
    return g;
  }
};

double mollified_gauge(const CenteredGauge& j, const MollifierRule& rule, Point x) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.offset.size(); ++i)
    s += rule.weight[i] * j(x - rule.offset[i]);
  return s;
}

double boundary_radius(const CenteredGauge& j, const MollifierRule& rule, Point dir,
                       double r_poly, double band) {
  double lo = 0.0;
  double hi = (1.0 + band) * r_poly * 1.01;
  while (mollified_gauge(j, rule, hi * dir) < 1.0) hi *= 1.5;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (mollified_gauge(j, rule, mid * dir) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

SmoothedBoundary smooth_impl(const ConvexPolygon& p, int n, int samples, bool parallel) {
  using std::numbers::pi;
  if (n < 1) throw PreconditionError("smoothing index must be positive");
  if (samples < 8) throw PreconditionError("need at least 8 angular samples");

  const InradiusResult inr = inradius(p);
  const Point c = inr.center();
  const ConvexPolygon pc = translate(p, {-c.x, -c.y});
  const GaugeInfo info = gauge_lipschitz(pc);
  const double band = info.lipschitz / n;
  if (band >= info.origin_interior_margin || band >= 1.0)
    throw RefineNError("smoothing index too small for the inclusion sandwich; increase n");

  CenteredGauge j{edge_halfplanes(pc)};
  const MollifierRule rule(1.0 / n);

  SmoothedBoundary out;
  out.center = c;
  out.n = n;
  out.lipschitz = info.lipschitz;
  out.theta.resize(samples);
  out.r_polygon.resize(samples);
  out.r_smooth.resize(samples);

#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < samples; ++i) {
    const double th = 2.0 * pi * i / samples;
    const Point dir{std::cos(th), std::sin(th)};
    const double rp = 1.0 / j(dir);
    out.theta[i] = th;
    out.r_polygon[i] = rp;
    out.r_smooth[i] = boundary_radius(j, rule, dir, rp, band);
  }
  return out;
}

}  // namespace

std::vector<Point> SmoothedBoundary::polyline() const {
  std::vector<Point> pts;
  pts.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i)
    pts.push_back({center.x + r_smooth[i] * std::cos(theta[i]),
                   center.y + r_smooth[i] * std::sin(theta[i])});
  return pts;
}

double SmoothedBoundary::perimeter() const { return chain_perimeter(polyline()); }

bool SmoothedBoundary::sandwich_holds(double slack) const {
  const double band = lipschitz / n;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double lo = (1.0 - band) * r_polygon[i];
    const double hi = (1.0 + band) * r_polygon[i];
    if (r_smooth[i] < lo - slack || r_smooth[i] > hi + slack) return false;
  }
  return true;
}

SmoothedBoundary smooth(const ConvexPolygon& p, int n, int angular_resolution) {
  return smooth_impl(p, n, angular_resolution, true);
}

SmoothedBoundary smooth_serial(const ConvexPolygon& p, int n, int angular_resolution) {
  return smooth_impl(p, n, angular_resolution, false);
}

}  // namespace cheeger
