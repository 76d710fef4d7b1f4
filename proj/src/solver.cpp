#include "cheeger/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "cheeger/nelder_mead.hpp"

namespace cheeger {

using std::numbers::pi;

namespace {

constexpr double kPenalty = 1e30;

double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Snaps to a power-of-two grid near 1e-12 of the scale, so that exactly
// representable translations of the domain reproduce the canonical frame.
Point snap_point(Point c, double scale) {
  const double quantum = std::ldexp(std::exp2(std::ceil(std::log2(std::max(scale, 1e-30)))), -40);
  return {std::round(c.x / quantum) * quantum, std::round(c.y / quantum) * quantum};
}

// Keeps 40 significant bits: derived seed dimensions become independent of
// sub-1e-12 solver noise in the inradius.
double snap_sig(double v) {
  if (v == 0.0) return 0.0;
  const int e = std::ilogb(v);
  return std::ldexp(std::round(std::ldexp(v, 40 - e)), e - 40);
}

struct PolyGauge {
  std::vector<HalfPlane> planes;
  explicit PolyGauge(const ConvexPolygon& p) : planes(edge_halfplanes(p)) {}
  double operator()(Point x) const {
    double g = 0.0;
    for (const HalfPlane& h : planes) g = std::max(g, dot(h.a, x) / h.b);
    return g;
  }
};

// One boundary point per equally spaced direction about the (interior) origin,
// scaled by `shrink`.
std::vector<Point> resample_boundary(const PolyGauge& gauge, int m, double shrink) {
  std::vector<Point> out;
  out.reserve(m);
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * pi * k / m;
    const Point dir{std::cos(th), std::sin(th)};
    out.push_back((shrink / gauge(dir)) * dir);
  }
  return out;
}

std::vector<Point> stadium_points(Point axis_dir, double half_length, double radius, int m) {
  std::vector<Point> out;
  out.reserve(m);
  const Point u = axis_dir;
  const Point v{-u.y, u.x};
  const int arc = std::max(m / 2, 4);
  for (int k = 0; k < arc; ++k) {
    const double th = -0.5 * pi + pi * k / (arc - 1);
    const double a = half_length + radius * std::cos(th);
    const double b = radius * std::sin(th);
    out.push_back({a * u.x + b * v.x, a * u.y + b * v.y});
  }
  for (int k = 0; k < arc; ++k) {
    const double th = 0.5 * pi + pi * k / (arc - 1);
    const double a = -half_length + radius * std::cos(th);
    const double b = radius * std::sin(th);
    out.push_back({a * u.x + b * v.x, a * u.y + b * v.y});
  }
  return out;
}

struct RatioObjective {
  std::span<const HalfPlane> window;
  double inv_q = 1.0;
  double clip_tol_base = 1e-12;  // scaled per plane by 1 + |offset|
  double min_area = 0.0;
  mutable std::vector<Point> pts, hull, scratch;

  double operator()(std::span<const double> x) const {
    pts.clear();
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) pts.push_back({x[i], x[i + 1]});
    convex_hull_into(pts, hull);
    if (hull.size() < 3) return kPenalty;

    // Planes that cannot cut the hull's bounding box are skipped; for
    // candidates deep inside the domain this avoids the whole clip pass.
    double xmin = hull[0].x, xmax = hull[0].x, ymin = hull[0].y, ymax = hull[0].y;
    for (const Point& p : hull) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    for (const HalfPlane& h : window) {
      const double tol = clip_tol_base * (1.0 + std::abs(h.b));
      const double support = h.a.x * (h.a.x > 0 ? xmax : xmin) + h.a.y * (h.a.y > 0 ? ymax : ymin);
      if (support <= h.b + tol) continue;
      clip_against(hull, {&h, 1}, scratch, tol);
      if (hull.size() < 3) return kPenalty;
    }
    const double a = chain_area(hull);
    if (!(a > min_area)) return kPenalty;
    return chain_perimeter(hull) / std::pow(a, inv_q);
  }
};

struct StartResult {
  std::vector<double> x;
  double value = kPenalty;
  long evals = 0;
  bool converged = false;
};

StartResult run_start(const RatioObjective& obj, const std::vector<Point>& seed,
                      const SolverOptions& opt) {
  StartResult res;
  res.x.reserve(2 * seed.size());
  double xmin = seed[0].x, xmax = seed[0].x, ymin = seed[0].y, ymax = seed[0].y;
  for (const Point& p : seed) {
    res.x.push_back(p.x);
    res.x.push_back(p.y);
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  res.value = obj(res.x);

  // Simplex step sized to the seed, not the domain: a compact candidate in a
  // long domain should move on its own scale.
  const double seed_diam = std::hypot(xmax - xmin, ymax - ymin);
  const int rounds = std::max(opt.restarts, 1);
  double step = 0.5 * pi * seed_diam / std::max(opt.vertex_count, 8);
  double prev_round_value = res.value;
  for (int round = 0; round < rounds; ++round) {
    NelderMeadOptions nmo;
    nmo.max_evals = std::max(opt.max_iters / rounds, 200);
    nmo.tol_rel = opt.tol_rel;
    nmo.init_step = step;
    const NelderMeadResult nm =
        nelder_mead([&](std::span<const double> p) { return obj(p); }, res.x, nmo);
    res.evals += nm.evals;
    prev_round_value = res.value;
    res.converged = nm.converged;
    if (nm.fx < res.value) {
      res.value = nm.fx;
      res.x = nm.x;
    }
    step *= 0.5;
  }
  // Stationary across the final restart counts as settled.
  if (!res.converged && prev_round_value - res.value <= 10.0 * opt.tol_rel * std::abs(res.value))
    res.converged = true;
  return res;
}

// ---- rounded-corner family ----------------------------------------------

// Inner parallel chain at offset t, clipped out of the bounding box.
void inner_chain(const std::vector<HalfPlane>& planes, double t, Point bb_lo, Point bb_hi,
                 std::vector<Point>& out, std::vector<Point>& scratch,
                 std::vector<HalfPlane>& offset, double tol) {
  offset.assign(planes.begin(), planes.end());
  for (HalfPlane& h : offset) h.b -= t;
  out.assign({{bb_lo.x, bb_lo.y}, {bb_hi.x, bb_lo.y}, {bb_hi.x, bb_hi.y}, {bb_lo.x, bb_hi.y}});
  clip_against(out, offset, scratch, tol);
}

struct FamilySearch {
  double value = kPenalty;
  double t_best = 0.0;
  long evals = 0;
};

// Ratio of the opened set (inner body at offset t, Minkowski-dilated back by t)
// through the Steiner formulas P = P_in + 2 pi t, A = A_in + P_in t + pi t^2.
FamilySearch rounded_family_search(const ConvexPolygon& domain, const Exponent& e) {
  const auto planes = edge_halfplanes(domain);
  const InradiusResult inr = inradius(domain);
  const double iq = e.inv_q();

  double lox = 1e300, loy = 1e300, hix = -1e300, hiy = -1e300;
  for (const Point& v : domain.vertices()) {
    lox = std::min(lox, v.x);
    loy = std::min(loy, v.y);
    hix = std::max(hix, v.x);
    hiy = std::max(hiy, v.y);
  }
  const Point bb_lo{lox, loy}, bb_hi{hix, hiy};
  const double tol = 1e-13 * distance(bb_lo, bb_hi);

  std::vector<Point> buf, scratch;
  std::vector<HalfPlane> offset;
  long evals = 0;
  auto value_at = [&](double t) {
    ++evals;
    inner_chain(planes, std::max(t, 0.0), bb_lo, bb_hi, buf, scratch, offset, tol);
    if (buf.size() < 3) return std::numeric_limits<double>::infinity();
    const double pin = chain_perimeter(buf);
    const double ain = chain_area(buf);
    const double p = pin + 2.0 * pi * t;
    const double a = ain + pin * t + pi * t * t;
    if (!(a > 0)) return std::numeric_limits<double>::infinity();
    return p / std::pow(a, iq);
  };

  const int cells = 400;
  const double t_hi = inr.r * (1.0 - 1e-9);
  int best_k = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= cells; ++k) {
    const double v = value_at(t_hi * k / cells);
    if (v < best_v) {
      best_v = v;
      best_k = k;
    }
  }

  double lo = t_hi * std::max(best_k - 1, 0) / cells;
  double hi = t_hi * std::min(best_k + 1, cells) / cells;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  while (hi - lo > 1e-13 * std::max(inr.r, 1e-30)) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = value_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = value_at(x2);
    }
  }
  const double t_mid = 0.5 * (lo + hi);
  const double f_mid = value_at(t_mid);

  FamilySearch out;
  out.evals = evals;
  out.value = f_mid;
  out.t_best = t_mid;
  if (best_v < out.value) {
    out.value = best_v;
    out.t_best = t_hi * best_k / cells;
  }
  return out;
}

// Boundary sampling of the rounded candidate: inner chain pushed back out by t
// with corner arcs.
std::vector<Point> rounded_candidate_points(const ConvexPolygon& domain, double t) {
  if (t <= 0.0) return domain.vertices();
  const auto planes = edge_halfplanes(domain);
  double lox = 1e300, loy = 1e300, hix = -1e300, hiy = -1e300;
  for (const Point& v : domain.vertices()) {
    lox = std::min(lox, v.x);
    loy = std::min(loy, v.y);
    hix = std::max(hix, v.x);
    hiy = std::max(hiy, v.y);
  }
  std::vector<Point> chain, scratch;
  std::vector<HalfPlane> offset;
  inner_chain(planes, t, {lox, loy}, {hix, hiy}, chain, scratch, offset,
              1e-13 * distance({lox, loy}, {hix, hiy}));
  if (chain.size() < 3) return domain.vertices();

  std::vector<Point> out;
  const std::size_t n = chain.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point prev = chain[(i + n - 1) % n];
    const Point cur = chain[i];
    const Point next = chain[(i + 1) % n];
    const Point e1 = cur - prev;
    const Point e2 = next - cur;
    // Outward normal angles of the two adjacent edges (CCW chain).
    double a1 = std::atan2(-e1.x, e1.y);
    double a2 = std::atan2(-e2.x, e2.y);
    while (a2 < a1) a2 += 2.0 * pi;
    const int samples = std::max(2, static_cast<int>(std::ceil((a2 - a1) / (pi / 16))));
    for (int k = 0; k <= samples; ++k) {
      const double th = a1 + (a2 - a1) * k / samples;
      out.push_back({cur.x + t * std::cos(th), cur.y + t * std::sin(th)});
    }
  }
  return out;
}

// ---- multistart polygon optimization -------------------------------------

std::vector<std::vector<Point>> build_seeds(const ConvexPolygon& omega_c,
                                            const InradiusResult& inr_c, const Exponent& e,
                                            const SolverOptions& opt, double diam) {
  const PolyGauge gauge(omega_c);
  const int vc = std::max(opt.vertex_count, 8);
  const double r = snap_sig(inr_c.r);

  std::vector<std::vector<Point>> base;
  base.push_back(resample_boundary(gauge, vc, 1.0));

  try {
    const FamilySearch fam = rounded_family_search(omega_c, e);
    std::vector<Point> pts = rounded_candidate_points(omega_c, fam.t_best);
    std::vector<Point> hull;
    convex_hull_into(pts, hull);
    if (hull.size() >= 3) {
      const PolyGauge g2{ConvexPolygon(hull)};
      base.push_back(resample_boundary(g2, vc, 1.0));
    }
  } catch (const std::exception&) {
    // seed candidates are best-effort; the scaled copies remain
  }

  // Ridge-aligned stadium candidates when the high ridge set is a segment.
  // The axis angle is snapped so that identical ridges reproduce identical
  // seeds bit-for-bit regardless of the surrounding domain.
  const double ridge_len = distance(inr_c.ridge_a, inr_c.ridge_b);
  if (!inr_c.is_unique_point && ridge_len > 1e-9 * diam) {
    const Point raw = inr_c.ridge_b - inr_c.ridge_a;
    const double angle =
        std::ldexp(std::round(std::ldexp(std::atan2(raw.y, raw.x), 30)), -30);
    const Point u{std::cos(angle), std::sin(angle)};
    for (double hl : {std::min(0.5 * ridge_len, 0.8 * r), std::min(0.5 * ridge_len, 1.6 * r)})
      base.push_back(stadium_points(u, hl, 0.98 * r, vc));
  }

  {  // inscribed disk at the inradius center
    std::vector<Point> disk;
    disk.reserve(vc);
    for (int k = 0; k < vc; ++k) {
      const double th = 2.0 * pi * k / vc;
      disk.push_back({0.9 * r * std::cos(th), 0.9 * r * std::sin(th)});
    }
    base.push_back(std::move(disk));
  }

  for (double t : {0.8, 0.6, 0.4}) base.push_back(resample_boundary(gauge, vc, t));

  std::vector<std::vector<Point>> seeds;
  const int want = std::max(opt.multistarts, 1);
  for (int i = 0; i < want; ++i) {
    if (i < static_cast<int>(base.size())) {
      seeds.push_back(base[i]);
    } else {
      std::mt19937_64 rng(mix_seed(opt.rng_seed, static_cast<std::uint64_t>(i)));
      std::vector<Point> jittered = base[i % base.size()];
      const double amp = 0.03 * diam;
      for (Point& p : jittered) {
        p.x += amp * (2.0 * u01(rng) - 1.0);
        p.y += amp * (2.0 * u01(rng) - 1.0);
      }
      seeds.push_back(std::move(jittered));
    }
  }
  return seeds;
}

CheegerEstimate solve_polygon(const ConvexPolygon& omega_in, const Exponent& e,
                              const SolverOptions& opt, double exact_area) {
  if (opt.vertex_count < 8) throw PreconditionError("vertex_count must be at least 8");
  const InradiusResult inr_in = inradius(omega_in);
  const double diam = diameter(omega_in);
  const Point c = snap_point(inr_in.center(), diam);
  const ConvexPolygon omega = translate(omega_in, {-c.x, -c.y});

  InradiusResult inr_c = inr_in;
  inr_c.ridge_a = inr_in.ridge_a - c;
  inr_c.ridge_b = inr_in.ridge_b - c;

  const auto window = edge_halfplanes(omega);
  RatioObjective obj;
  obj.window = window;
  obj.inv_q = e.inv_q();
  obj.min_area = 1e-8 * snap_sig(inr_in.r) * snap_sig(inr_in.r);

  const auto seeds = build_seeds(omega, inr_c, e, opt, diam);
  std::vector<StartResult> results(seeds.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < static_cast<int>(seeds.size()); ++i) {
    RatioObjective local = obj;  // private workspaces per thread
    results[i] = run_start(local, seeds[i], opt);
  }

  std::size_t win = 0;
  long total_evals = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    total_evals += results[i].evals;
    if (results[i].value < results[win].value) win = i;
  }
  if (std::getenv("CHEEGER_TRACE_STARTS")) {
    for (std::size_t i = 0; i < results.size(); ++i)
      std::fprintf(stderr, "  start %zu: %.12f%s\n", i, results[i].value,
                   i == win ? "  <- winner" : "");
  }
  if (!(results[win].value < kPenalty)) throw GeometryError("optimizer produced no valid candidate");

  // Rebuild the winning polygon, re-containing and re-validating it.
  std::vector<Point> pts, hull, scratch;
  for (std::size_t i = 0; i + 1 < results[win].x.size(); i += 2)
    pts.push_back({results[win].x[i], results[win].x[i + 1]});
  convex_hull_into(pts, hull);
  for (const HalfPlane& h : window)
    clip_against(hull, {&h, 1}, scratch, obj.clip_tol_base * (1.0 + std::abs(h.b)));
  ConvexPolygon minimizer = translate(convex_hull(hull), c);

  const double contain_tol = 1e-9 * diam;
  for (const Point& v : minimizer.vertices())
    if (!contains_point(omega_in, v, contain_tol))
      throw GeometryError("candidate escaped the domain");

  CheegerEstimate est;
  est.minimizer = minimizer;
  est.value = perimeter(minimizer) / std::pow(area(minimizer), e.inv_q());
  est.lower_bound = isoperimetric_floor(exact_area, e);
  est.method = SolveMethod::polygon_opt;
  est.iterations = total_evals;
  est.converged = results[win].converged;
  return est;
}

}  // namespace

double exact_shape_area(const ShapeSpec& s) {
  struct Visitor {
    double operator()(const DiskSpec& d) const { return pi * d.radius * d.radius; }
    double operator()(const PolygonSpec& p) const { return area(ConvexPolygon(p.vertices)); }
    double operator()(const RectangleSpec& r) const { return r.width * r.height; }
    double operator()(const StadiumSpec& s) const {
      return pi * s.radius * s.radius + 2.0 * s.radius * s.length;
    }
    double operator()(const EllipseSpec& e) const { return pi * e.a * e.b; }
    double operator()(const HalfStripSpec& h) const {
      if (!std::isfinite(h.length)) throw PreconditionError("unbounded area");
      return 2.0 * h.halfwidth * h.length;
    }
    double operator()(const EpigraphSpec&) const {
      throw PreconditionError("unbounded area");
    }
    double operator()(const UnionSpec& u) const {
      double a = 0.0;
      for (const ShapeSpec& m : u.members) a += exact_shape_area(m);
      return a;
    }
  };
  return std::visit(Visitor{}, s.v);
}

double isoperimetric_floor(double max_area, const Exponent& e) {
  if (!(max_area > 0)) throw PreconditionError("area must be positive");
  return 2.0 * std::sqrt(pi) * std::pow(max_area, 0.5 - e.inv_q());
}

CheegerEstimate solve_convex(const ShapeSpec& domain, const Exponent& e,
                             const SolverOptions& opt) {
  if (e.N != 2) throw PreconditionError("the shape solver works in the plane (N = 2)");
  Exponent::make(e.N, e.q);
  if (is_union(domain)) throw PreconditionError("domain is disconnected; use solve_union");
  if (std::holds_alternative<EpigraphSpec>(domain.v))
    throw PreconditionError(
        "epigraph domains attain no minimizer; see existence_report and nonexistence_demo");

  if (const auto* d = std::get_if<DiskSpec>(&domain.v)) {
    CheegerEstimate est;
    est.value = hq_ball(e, d->radius);
    est.lower_bound = isoperimetric_floor(pi * d->radius * d->radius, e);
    est.method = SolveMethod::analytic;
    est.converged = true;
    return est;
  }

  if (const auto* h = std::get_if<HalfStripSpec>(&domain.v); h && !std::isfinite(h->length)) {
    if (!(e.q > 1.0))
      throw PreconditionError(
          "the unbounded half-strip is solvable by truncation only for 1 < q < 2; for q <= 1 "
          "see existence_report");
    double length = 16.0 * h->halfwidth;
    ShapeSpec trunc{HalfStripSpec{h->halfwidth, length}};
    CheegerEstimate prev = solve_convex(trunc, e, opt);
    for (int k = 0; k < 5; ++k) {
      length *= 2.0;
      ShapeSpec next{HalfStripSpec{h->halfwidth, length}};
      CheegerEstimate cur = solve_convex(next, e, opt);
      cur.iterations += prev.iterations;
      if (std::abs(cur.value - prev.value) <= 1e-3 * std::abs(cur.value)) {
        cur.converged = true;
        return cur;
      }
      prev = cur;
    }
    prev.converged = false;
    return prev;
  }

  const ConvexPolygon omega = polygonize(domain, opt.resolution);
  return solve_polygon(omega, e, opt, exact_shape_area(domain));
}

CheegerEstimate solve_rounded_family(const ConvexPolygon& domain, const Exponent& e) {
  if (e.N != 2) throw PreconditionError("the rounded family is planar (N = 2)");
  Exponent::make(e.N, e.q);
  const FamilySearch fam = rounded_family_search(domain, e);
  CheegerEstimate est;
  est.value = fam.value;
  est.lower_bound = isoperimetric_floor(area(domain), e);
  est.method = SolveMethod::rounded_family;
  est.iterations = fam.evals;
  est.converged = true;
  return est;
}

namespace {

// Joint ratio over one ball per member, radii clamped to the member radii.
double multi_ball_ratio(std::span<const double> radii, double inv_q) {
  double p = 0.0, a = 0.0;
  for (double r : radii) {
    p += 2.0 * pi * r;
    a += pi * r * r;
  }
  if (!(a > 0)) return std::numeric_limits<double>::infinity();
  return p / std::pow(a, inv_q);
}

CheegerEstimate solve_disk_union_sublinear(const std::vector<double>& rmax, const Exponent& e,
                                           double a_total) {
  const std::size_t k = rmax.size();
  const double iq = e.inv_q();

  if (k == 2) {
    const double lo = std::min(rmax[0], rmax[1]);
    const double hi = std::max(rmax[0], rmax[1]);
    const TwoBallResult tb = two_ball_h(lo, hi, e.q);
    CheegerEstimate est;
    est.value = tb.value;
    est.lower_bound = isoperimetric_floor(a_total, e);
    est.method = tb.analytic ? SolveMethod::analytic : SolveMethod::grid;
    est.converged = true;
    return est;
  }

  const int cells = (k <= 3) ? 100 : 40;
  std::vector<int> idx(k, 0);
  std::vector<double> radii(k, 0.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_radii(k, 0.0);
  long evals = 0;
  bool done = false;
  while (!done) {
    bool all_zero = true;
    for (std::size_t i = 0; i < k; ++i) {
      radii[i] = rmax[i] * idx[i] / cells;
      if (idx[i] != 0) all_zero = false;
    }
    if (!all_zero) {
      ++evals;
      const double v = multi_ball_ratio(radii, iq);
      if (v < best) {
        best = v;
        best_radii = radii;
      }
    }
    std::size_t pos = 0;
    while (pos < k) {
      if (++idx[pos] <= cells) break;
      idx[pos] = 0;
      ++pos;
    }
    done = (pos == k);
  }

  auto obj = [&](std::span<const double> x) {
    std::vector<double> r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = std::clamp(x[i], 0.0, rmax[i]);
    return multi_ball_ratio(r, iq);
  };
  NelderMeadOptions nmo;
  nmo.max_evals = 4000;
  nmo.tol_rel = 1e-13;
  nmo.init_step = 0.5 * *std::max_element(rmax.begin(), rmax.end()) / cells;
  const NelderMeadResult nm = nelder_mead(obj, best_radii, nmo);

  CheegerEstimate est;
  est.value = std::min(best, nm.fx);
  est.lower_bound = isoperimetric_floor(a_total, e);
  est.method = SolveMethod::grid;
  est.iterations = evals + nm.evals;
  est.converged = true;
  return est;
}

}  // namespace

CheegerEstimate solve_union(const ShapeSpec& domain, const Exponent& e, const SolverOptions& opt) {
  const auto* u = std::get_if<UnionSpec>(&domain.v);
  if (!u) throw PreconditionError("solve_union requires a union domain");
  if (e.N != 2) throw PreconditionError("the union solver works in the plane (N = 2)");
  Exponent::make(e.N, e.q);
  certify_disjoint(*u);
  if (!is_bounded(domain))
    throw PreconditionError("union members must be bounded");

  const double a_total = exact_shape_area(domain);

  if (e.q >= 1.0) {
    CheegerEstimate best;
    best.value = std::numeric_limits<double>::infinity();
    long evals = 0;
    for (const ShapeSpec& m : u->members) {
      CheegerEstimate est = solve_convex(m, e, opt);
      evals += est.iterations;
      if (est.value < best.value) best = est;
    }
    best.lower_bound = isoperimetric_floor(a_total, e);
    best.iterations = evals;
    return best;
  }

  // q < 1: joint optimization; per-ball radii when every member is a disk.
  bool all_disks = true;
  std::vector<double> rmax;
  for (const ShapeSpec& m : u->members) {
    if (const auto* d = std::get_if<DiskSpec>(&m.v))
      rmax.push_back(d->radius);
    else
      all_disks = false;
  }
  if (all_disks) {
    if (rmax.size() == 1) {
      CheegerEstimate est;
      est.value = hq_ball(e, rmax[0]);
      est.lower_bound = isoperimetric_floor(a_total, e);
      est.method = SolveMethod::analytic;
      est.converged = true;
      return est;
    }
    return solve_disk_union_sublinear(rmax, e, a_total);
  }

  // Joint scaling search over per-member best convex candidates.
  const std::size_t k = u->members.size();
  std::vector<double> per(k), area_of(k);
  long evals = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (const auto* d = std::get_if<DiskSpec>(&u->members[i].v)) {
      per[i] = 2.0 * pi * d->radius;
      area_of[i] = pi * d->radius * d->radius;
    } else {
      const CheegerEstimate est = solve_convex(u->members[i], e, opt);
      evals += est.iterations;
      if (!est.minimizer) throw GeometryError("member candidate missing");
      per[i] = perimeter(*est.minimizer);
      area_of[i] = area(*est.minimizer);
    }
  }
  const double iq = e.inv_q();
  auto scaled_ratio = [&](std::span<const double> s) {
    double p = 0.0, a = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double t = std::clamp(s[i], 0.0, 1.0);
      p += t * per[i];
      a += t * t * area_of[i];
    }
    if (!(a > 0)) return std::numeric_limits<double>::infinity();
    return p / std::pow(a, iq);
  };

  const int cells = (k <= 3) ? 100 : 20;
  std::vector<int> idx(k, 0);
  std::vector<double> s(k);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_s(k, 0.0);
  bool done = false;
  while (!done) {
    bool all_zero = true;
    for (std::size_t i = 0; i < k; ++i) {
      s[i] = static_cast<double>(idx[i]) / cells;
      if (idx[i] != 0) all_zero = false;
    }
    if (!all_zero) {
      ++evals;
      const double v = scaled_ratio(s);
      if (v < best) {
        best = v;
        best_s = s;
      }
    }
    std::size_t pos = 0;
    while (pos < k) {
      if (++idx[pos] <= cells) break;
      idx[pos] = 0;
      ++pos;
    }
    done = (pos == k);
  }
  NelderMeadOptions nmo;
  nmo.max_evals = 4000;
  nmo.tol_rel = 1e-13;
  nmo.init_step = 0.5 / cells;
  const NelderMeadResult nm = nelder_mead(scaled_ratio, best_s, nmo);

  CheegerEstimate est;
  est.value = std::min(best, nm.fx);
  est.lower_bound = isoperimetric_floor(a_total, e);
  est.method = SolveMethod::grid;
  est.iterations = evals + nm.evals;
  est.converged = true;
  return est;
}

ExistenceReport existence_report(const ShapeSpec& domain, const Exponent& e) {
  if (e.N != 2) throw PreconditionError("the existence dichotomy is planar (N = 2)");
  Exponent::make(e.N, e.q);
  if (is_union(domain))
    throw PreconditionError("existence_report applies to convex domains, not unions");

  ExistenceReport rep;

  if (std::holds_alternative<EpigraphSpec>(domain.v)) {
    rep.regime = "epigraph";
    if (e.q < 1.0) {
      rep.value_is_zero = true;
      rep.reason =
          "unbounded domain with q < 1: elongating inscribed stadium hulls drive the ratio to 0";
    } else {
      rep.reason =
          "high ridge set is empty (the profile blows up at the strip edges, so no inscribed "
          "disk reaches the inradius); translating any candidate toward the widening end and "
          "inflating it slightly strictly lowers the ratio";
    }
    rep.attained = false;
    return rep;
  }

  if (const auto* h = std::get_if<HalfStripSpec>(&domain.v); h && !std::isfinite(h->length)) {
    rep.regime = "halfstrip";
    if (e.q < 1.0) {
      rep.attained = false;
      rep.value_is_zero = true;
      rep.reason =
          "unbounded domain with q < 1: elongating inscribed stadium hulls drive the ratio to 0";
    } else if (e.q == 1.0) {
      rep.attained = false;
      rep.reason = "borderline exponent: the constant is positive but possibly not attained";
    } else {
      rep.attained = true;
      std::ostringstream rd;
      rd << "half-line {(x, 0) : x >= " << h->halfwidth << "}";
      rep.ridge_description = rd.str();
      rep.reason =
          "high ridge set nonempty: every disk of maximal radius centered on the axis beyond "
          "the cap fits, so a minimizer exists";
    }
    return rep;
  }

  rep.regime = "bounded";
  rep.attained = true;
  const InradiusResult inr = inradius(polygonize(domain, 256));
  rep.ridge = inr;
  std::ostringstream rd;
  if (inr.is_unique_point)
    rd << "point (" << inr.ridge_a.x << ", " << inr.ridge_a.y << ")";
  else
    rd << "segment (" << inr.ridge_a.x << ", " << inr.ridge_a.y << ") to (" << inr.ridge_b.x
       << ", " << inr.ridge_b.y << ")";
  rep.ridge_description = rd.str();
  rep.reason = "bounded convex domain: the high ridge set is nonempty and the infimum is attained";
  return rep;
}

std::vector<NonexistenceStep> nonexistence_demo(const EpigraphSpec& domain, const Exponent& e,
                                                int steps, double growth) {
  if (steps < 2) throw PreconditionError("need at least 2 steps");
  if (!(e.q > 1.0) || !(e.q < 2.0) || e.N != 2)
    throw PreconditionError("the walk is defined for N = 2 and 1 < q < 2");
  if (!(growth > 0.0) || growth > 1.0) throw PreconditionError("growth must lie in (0, 1]");

  const double w = domain.halfwidth;
  const double iq = e.inv_q();

  // Leftmost admissible center abscissa for a disk of radius rho. The profile
  // steepens without bound toward the strip edges, so the boundary is probed on
  // an angular grid (a refinement of the verification grid) where the sample
  // points concentrate near the edges exactly as the disk samples do.
  const int verify_samples = 1440;
  auto required_x = [&](double rho) {
    double need = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8 * verify_samples; ++i) {
      const double th = 2.0 * pi * i / (8 * verify_samples);
      const double y = rho * std::sin(th);
      need = std::max(need, epigraph_profile(domain, y) + rho * std::abs(std::cos(th)));
    }
    return need + 1e-6 * w;
  };

  auto verify_contained = [&](double xc, double rho) {
    for (int i = 0; i < verify_samples; ++i) {
      const double th = 2.0 * pi * i / verify_samples;
      const double x = xc + rho * std::cos(th);
      const double y = rho * std::sin(th);
      if (!(std::abs(y) < w) || !(x > epigraph_profile(domain, y)))
        throw GeometryError("inflated disk escaped the epigraph");
    }
  };

  std::vector<NonexistenceStep> out;
  out.reserve(steps);
  const double rho0 = 0.8 * w;
  double prev_rho = rho0;
  double prev_x = required_x(rho0);
  verify_contained(prev_x, rho0);
  out.push_back({0.0, 1.0, 2.0 * pi * prev_rho / std::pow(pi * prev_rho * prev_rho, iq)});

  for (int k = 1; k < steps; ++k) {
    const double rho = w - (w - rho0) * std::pow(growth, k);
    const double x = std::max(required_x(rho), prev_x);
    verify_contained(x, rho);
    NonexistenceStep s;
    s.shift = x - prev_x;
    s.scale = rho / prev_rho;
    s.ratio = 2.0 * pi * rho / std::pow(pi * rho * rho, iq);
    out.push_back(s);
    prev_rho = rho;
    prev_x = x;
  }
  return out;
}

ElongationResult elongation_demo(ElongationFamily family, const Exponent& e,
                                 std::span<const double> sizes) {
  if (sizes.empty()) throw PreconditionError("need at least one size");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (!(sizes[i] > sizes[i - 1])) throw PreconditionError("sizes must be increasing");
  const double iq = e.inv_q();

  ElongationResult out;
  out.points.reserve(sizes.size());
  for (double size : sizes) {
    ElongationPoint pt;
    pt.size = size;
    switch (family) {
      case ElongationFamily::stadium:
        pt.perimeter = 2.0 * pi + 2.0 * size;  // radius 1, length `size`
        pt.area = pi + 2.0 * size;
        break;
      case ElongationFamily::ellipse:
        pt.perimeter = ellipse_perimeter(size, 1.0);
        pt.area = pi * size;
        break;
      case ElongationFamily::rectangle:
        pt.perimeter = 4.0 + 2.0 * size;  // width 2, length `size`
        pt.area = 2.0 * size;
        break;
    }
    pt.ratio = pt.perimeter / std::pow(pt.area, iq);
    out.points.push_back(pt);
  }

  if (out.points.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(out.points.size());
    for (const ElongationPoint& p : out.points) {
      const double lx = std::log(p.size);
      const double ly = std::log(p.ratio);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return out;
}

double vanishing_witness_length(double halfwidth, double q, double eps) {
  if (!(halfwidth > 0) || !(eps > 0)) throw PreconditionError("parameters must be positive");
  if (!(q > 0) || !(q < 1)) throw PreconditionError("the ratio vanishes only for q < 1");
  const double r = halfwidth;
  double d = r;
  for (int i = 0; i < 4000; ++i) {
    const double ratio = (2.0 * pi * r + 2.0 * d) / std::pow(pi * r * r + 2.0 * r * d, 1.0 / q);
    if (ratio < eps) return d;
    d *= 2.0;
  }
  throw GeometryError("witness search did not terminate");
}

}  // namespace cheeger
