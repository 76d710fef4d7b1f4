#include "cheeger/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "cheeger/constants.hpp"
#include "cheeger/smoothing.hpp"
#include "cheeger/svg.hpp"

namespace cheeger {

using std::numbers::pi;

namespace {

double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

double round_dyadic(double x, int bits) { return std::ldexp(std::round(std::ldexp(x, bits)), -bits); }

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CheckResult one_sided(std::string id, std::string claim, std::string shape, double q, double lhs,
                      double rhs, double margin) {
  CheckResult c;
  c.check_id = std::move(id);
  c.claim = std::move(claim);
  c.kind = "one_sided";
  c.shape = std::move(shape);
  c.q = q;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = margin;
  c.passed = lhs <= rhs * (1.0 + margin) + (rhs == 0.0 ? margin : 0.0);
  return c;
}

CheckResult identity(std::string id, std::string claim, std::string shape, double q, double lhs,
                     double rhs, double margin) {
  CheckResult c;
  c.check_id = std::move(id);
  c.claim = std::move(claim);
  c.kind = "identity";
  c.shape = std::move(shape);
  c.q = q;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = margin;
  c.passed = std::abs(lhs - rhs) <= margin * std::max(std::abs(lhs), std::abs(rhs));
  return c;
}

CheckResult violations(std::string id, std::string claim, std::string shape, double q,
                       long count) {
  CheckResult c;
  c.check_id = std::move(id);
  c.claim = std::move(claim);
  c.kind = "violations";
  c.shape = std::move(shape);
  c.q = q;
  c.lhs = static_cast<double>(count);
  c.rhs = 0.0;
  c.margin = 0.0;
  c.passed = count == 0;
  return c;
}

ShapeSpec random_hexagon(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) {
      const double th = 2.0 * pi * u01(rng);
      const double r = std::sqrt(0.36 + u01(rng) * (1.69 - 0.36));
      pts.push_back({round_dyadic(r * std::cos(th), 20), round_dyadic(r * std::sin(th), 20)});
    }
    try {
      const ConvexPolygon hull = convex_hull(pts);
      if (hull.size() < 4) continue;
      const Point c = centroid(hull);
      double circum = 0.0;
      for (const Point& v : hull.vertices()) circum = std::max(circum, distance(c, v));
      if (inradius(hull).r < 0.1 * circum) continue;
      return {PolygonSpec{hull.vertices()}};
    } catch (const std::exception&) {
      continue;
    }
  }
  throw GeometryError("hexagon sampling failed");
}

}  // namespace

std::vector<ShapeSpec> default_corpus(std::uint64_t seed) {
  std::vector<ShapeSpec> corpus;
  corpus.push_back({DiskSpec{{0.0, 0.0}, 1.0}});
  corpus.push_back({RectangleSpec{1.0, 1.0}});
  corpus.push_back({RectangleSpec{3.0, 1.0}});
  corpus.push_back(random_hexagon(seed ^ 0x5bd1e995u));
  corpus.push_back(random_hexagon(seed ^ 0xc2b2ae35u));
  UnionSpec u;
  u.members.push_back({DiskSpec{{0.0, 0.0}, 0.5}});
  u.members.push_back({DiskSpec{{3.5, 0.0}, 1.0}});
  u.disjoint = true;
  corpus.push_back({u});
  corpus.push_back({StadiumSpec{1.0, 2.0}});
  corpus.push_back({EllipseSpec{2.0, 1.0}});
  return corpus;
}

std::vector<double> default_qs() { return {0.5, 1.0, 1.2, 1.5, 1.8}; }

Report run_suite(const std::vector<ShapeSpec>& corpus, const std::vector<double>& qs,
                 std::uint64_t seed, const VerifyOptions& opt) {
  if (corpus.empty()) throw PreconditionError("corpus must not be empty");
  if (qs.empty()) throw PreconditionError("qs must not be empty");
  for (double q : qs) Exponent::make(2, q);

  Report rep;
  rep.seed = seed;
  rep.qs = qs;
  rep.timestamp = iso_timestamp();
  {
    std::ostringstream d;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      d << (i ? "; " : "") << shape_summary(corpus[i]);
    rep.corpus_description = d.str();
  }

  SolverOptions sopt = opt.solver;
  sopt.rng_seed = seed;

  auto estimate_of = [&](const ShapeSpec& s, double q) -> double {
    const Exponent e = Exponent::make(2, q);
    if (is_union(s)) return solve_union(s, e, sopt).value;
    const CheegerEstimate a = solve_convex(s, e, sopt);
    if (std::holds_alternative<DiskSpec>(s.v)) return a.value;
    const CheegerEstimate b = solve_rounded_family(polygonize(s, sopt.resolution), e);
    return std::min(a.value, b.value);
  };

  std::map<std::pair<std::size_t, long long>, double> cache;
  auto cached = [&](std::size_t i, double q) -> double {
    const auto key = std::make_pair(i, std::bit_cast<long long>(q));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = estimate_of(corpus[i], q);
    cache.emplace(key, v);
    return v;
  };

  auto add = [&](CheckResult c) { rep.results.push_back(std::move(c)); };

  // --- exact ball values, per exponent ------------------------------------
  for (double q : qs) {
    const Exponent e = Exponent::make(2, q);
    double worst = 0.0;
    for (double R : {0.5, 1.0, 2.0}) {
      const double direct = 2.0 * pi * R / std::pow(pi * R * R, e.inv_q());
      worst = std::max(worst, std::abs(hq_ball(e, R) - direct) / direct);
    }
    add(one_sided("ball-closed-form",
                  "ratio constant of a disk equals the closed form N w^(1-1/q) R^(N-1-N/q)",
                  "disks R in {0.5,1,2}", q, worst, 1e-12, 0.0));
  }

  // --- ratio decomposition identity ----------------------------------------
  {
    std::mt19937_64 rng(seed ^ 0x9e3779b9u);
    for (double q : qs) {
      const Exponent e = Exponent::make(2, q);
      double worst = 0.0;
      for (int k = 0; k < 1000; ++k) {
        const double P = std::pow(10.0, -2.0 + 4.0 * u01(rng));
        const double A = std::pow(10.0, -2.0 + 4.0 * u01(rng));
        const RatioDecomposition d = decompose_ratio(P, A, e);
        const double direct = P / std::pow(A, e.inv_q());
        worst = std::max(worst, std::abs(d.product - direct) / direct);
      }
      add(one_sided("ratio-decomposition",
                    "P/A^(1/q) factors exactly into (P/A)^(N/q-N+1) (P/A^((N-1)/N))^(N-N/q)",
                    "random (P, A)", q, worst, 1e-12, 0.0));
    }
  }

  // --- per-shape comparison sandwich ---------------------------------------
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string name = shape_summary(corpus[i]);
    const double h1 = cached(i, 1.0);
    for (double q : qs) {
      if (q == 1.0) continue;
      const double ex = 2.0 / q - 1.0;
      const double hq = cached(i, q);
      const ComparisonConstants cc = comparison_constants(2, q);
      if (q > 1.0) {
        const double lhs = *cc.lower * std::pow(h1, ex);
        add(one_sided("comparison-lower",
                      "sharp coefficient times h1^(2/q-1) bounds hq from below (q > 1)", name, q,
                      lhs, hq, 0.05));
        add(one_sided("comparison-upper",
                      "hq is bounded by the explicit iteration constant times h1^(2/q-1) (q > 1)",
                      name, q, hq, cc.upper * std::pow(h1, ex), 0.05));
        rep.sandwich_points.push_back({lhs, hq});
        if (std::holds_alternative<DiskSpec>(corpus[i].v))
          add(identity("disk-comparison-equality",
                       "the lower comparison bound is an equality for disks", name, q, lhs, hq,
                       1e-10));
      } else {
        add(one_sided("sublinear-upper",
                      "for q < 1 the sharp coefficient times h1^(2/q-1) bounds hq from above",
                      name, q, hq, cc.upper * std::pow(h1, ex), 0.05));
      }
    }
    for (double q : qs) {
      const Exponent e = Exponent::make(2, q);
      add(one_sided("isoperimetric-floor",
                    "every estimate sits above the isoperimetric floor 2 sqrt(pi) A^(1/2-1/q)",
                    name, q, isoperimetric_floor(exact_shape_area(corpus[i]), e), cached(i, q),
                    1e-12));
    }
  }

  // --- two-ball configuration ----------------------------------------------
  {
    const TwoBallResult tb = two_ball_h(0.1, 1.0, 0.5);
    add(identity("two-ball-value", "the small-ball/large-ball configuration has value 2/(pi R^3)",
                 "disks r=0.1, R=1", 0.5, tb.value, 2.0 / pi, 1e-9));
    add(violations("two-ball-optimizer", "the minimizing configuration keeps only the large ball",
                   "disks r=0.1, R=1", 0.5,
                   (std::abs(tb.r1) <= 1e-9 && std::abs(tb.r2 - 1.0) <= 1e-9) ? 0 : 1));
    const double proxy = lambda_upper_proxy_two_balls(0.1, 1.0, 0.5);
    add(one_sided("poincare-proxy-gap",
                  "the union's Poincare combination sits strictly below its ratio constant",
                  "disks r=0.1, R=1", 0.5, proxy, tb.value * (1.0 - 1e-4), 0.0));
    // exact gap law: gap/h = r^3 / (r^3 + R^3)
    double worst = 0.0;
    for (double r : {0.05, 0.1, 0.2}) {
      const double h = 2.0 / pi;  // analytic branch value at R = 1
      const double p = lambda_upper_proxy_two_balls(r, 1.0, 0.5);
      const double gap = (h - p) / h;
      const double exact = r * r * r / (1.0 + r * r * r);
      worst = std::max(worst, std::abs(gap - exact) / exact);
    }
    add(one_sided("poincare-proxy-gap-law",
                  "the relative gap between combination and ratio equals r^3/(r^3+R^3)",
                  "disks r in {0.05,0.1,0.2}, R=1", 0.5, worst, 1e-9, 0.0));
  }

  // --- disjoint unions -------------------------------------------------------
  {
    const double r_small = 0.5, r_big = 1.0;
    UnionSpec u;
    u.members.push_back({DiskSpec{{0.0, 0.0}, r_small}});
    u.members.push_back({DiskSpec{{3.5, 0.0}, r_big}});
    u.disjoint = true;
    const ShapeSpec us{u};
    for (double q : qs) {
      const Exponent e = Exponent::make(2, q);
      if (q < 1.0) continue;
      const double mins = std::min(hq_ball(e, r_small), hq_ball(e, r_big));
      add(identity("union-min-rule",
                   "for q >= 1 the constant of a disjoint union is the member minimum",
                   "two disks 0.5/1.0", q, solve_union(us, e, sopt).value, mins, 1e-9));
    }
    {
      const Exponent e = Exponent::make(2, 0.5);
      double oracle = std::numeric_limits<double>::infinity();
      for (int a = 0; a <= 400; ++a)
        for (int b = 0; b <= 400; ++b) {
          if (a == 0 && b == 0) continue;
          const double t = r_small * a / 400, s = r_big * b / 400;
          oracle = std::min(oracle, 2.0 * pi * (t + s) / std::pow(pi * (t * t + s * s), 2.0));
        }
      add(identity("union-joint-sublinear",
                   "for q < 1 the union solver matches a dense joint scan over per-ball radii",
                   "two disks 0.5/1.0", 0.5, solve_union(us, e, sopt).value, oracle, 1e-5));
    }
  }

  // --- iterated combination rules -------------------------------------------
  {
    const double radii[3] = {0.5, 1.0, 2.0};
    for (double q : {1.0, 1.2, 1.5}) {
      const Exponent e = Exponent::make(2, q);
      const double vals[3] = {hq_ball(e, radii[0]), hq_ball(e, radii[1]), hq_ball(e, radii[2])};
      double grid = std::numeric_limits<double>::infinity();
      for (int a = 0; a <= 100; ++a)
        for (int b = 0; b <= 100; ++b)
          for (int c = 0; c <= 100; ++c) {
            if (a == 0 && b == 0 && c == 0) continue;
            const double r0 = radii[0] * a / 100, r1 = radii[1] * b / 100, r2 = radii[2] * c / 100;
            const double p = 2.0 * pi * (r0 + r1 + r2);
            const double ar = pi * (r0 * r0 + r1 * r1 + r2 * r2);
            grid = std::min(grid, p / std::pow(ar, e.inv_q()));
          }
      add(identity("combine-grid-min",
                   "the minimum rule matches brute-force joint minimization over three balls",
                   "three disks 0.5/1/2", q, combine_disjoint(vals, e), grid, 1e-12));
    }
    {
      const Exponent e = Exponent::make(2, 0.5);
      const double vals[3] = {hq_ball(e, radii[0]), hq_ball(e, radii[1]), hq_ball(e, radii[2])};
      const double direct = 1.0 / (1.0 / vals[0] + 1.0 / vals[1] + 1.0 / vals[2]);
      add(identity("combine-power-mean",
                   "for q = 1/2 the combination reduces to a harmonic-type sum of reciprocals",
                   "three disks 0.5/1/2", 0.5, combine_disjoint(vals, e), direct, 1e-12));
      std::mt19937_64 rng(seed ^ 0x7f4a7c15u);
      long bad = 0;
      for (int k = 0; k < 200; ++k) {
        const double x = 0.5 + 4.0 * u01(rng), y = 0.5 + 4.0 * u01(rng);
        const double xy[2] = {x, y}, yx[2] = {y, x};
        if (combine_disjoint(xy, e) != combine_disjoint(yx, e)) ++bad;
        const double up[2] = {x * 1.25, y};
        if (combine_disjoint(up, e) < combine_disjoint(xy, e)) ++bad;
        if (!(combine_disjoint(xy, e) < std::min(x, y))) ++bad;
      }
      add(violations("combine-monotone",
                     "the q < 1 combination is symmetric, monotone and below each component",
                     "random pairs", 0.5, bad));
    }
  }

  // --- elongation families ----------------------------------------------------
  {
    const Exponent e_half = Exponent::make(2, 0.5);
    const double sizes[3] = {1e2, 1e3, 1e4};
    const ElongationResult st = elongation_demo(ElongationFamily::stadium, e_half, sizes);
    add(identity("elongation-decay-stadium",
                 "stadium ratios decay like size^(1-1/q) for q < 1", "stadium family", 0.5,
                 st.slope, 1.0 - 1.0 / 0.5, 0.05));
    const ElongationResult el = elongation_demo(ElongationFamily::ellipse, e_half, sizes);
    add(identity("elongation-decay-ellipse", "ellipse ratios decay like size^(1-1/q) for q < 1",
                 "ellipse family", 0.5, el.slope, 1.0 - 1.0 / 0.5, 0.05));
    for (const ElongationPoint& p : st.points) rep.stadium_decay.push_back({p.size, p.ratio});
    for (const ElongationPoint& p : el.points) rep.ellipse_decay.push_back({p.size, p.ratio});

    double worst = 0.0;
    for (const ElongationPoint& p : el.points)
      worst = std::max(worst, p.perimeter / (2.0 * pi * p.size));
    add(one_sided("ellipse-perimeter-bound",
                  "flat-ellipse perimeters never exceed the integral bound 2 pi L",
                  "ellipse family", 0.5, worst, 1.0, 0.0));

    const Exponent e_sup = Exponent::make(2, 1.5);
    const ElongationResult gr = elongation_demo(ElongationFamily::stadium, e_sup, sizes);
    long bad = 0;
    for (std::size_t k = 1; k < gr.points.size(); ++k)
      if (!(gr.points[k].ratio > gr.points[k - 1].ratio)) ++bad;
    add(violations("elongation-growth", "for q > 1 elongation strictly increases the ratio",
                   "stadium family", 1.5, bad));
  }

  // --- scaling and translation ----------------------------------------------
  {
    const Exponent e = Exponent::make(2, 1.5);
    const double t = 2.0;
    const double scale_law = std::pow(t, 1.0 - 2.0 / e.q);
    add(identity("scaling-law-analytic", "ratio constants scale by t^(1-2/q)", "disk R=1 vs R=2",
                 1.5, hq_ball(e, 2.0), scale_law * hq_ball(e, 1.0), 1e-12));

    const ShapeSpec sq{RectangleSpec{1.0, 1.0}};
    const ShapeSpec sq2{RectangleSpec{2.0, 2.0}};
    add(identity("scaling-law-optimizer", "optimizer estimates obey the t^(1-2/q) scaling law",
                 "squares 1 and 2", 1.5, estimate_of(sq2, 1.5),
                 scale_law * estimate_of(sq, 1.5), 1e-2));

    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto* poly = std::get_if<PolygonSpec>(&corpus[i].v);
      if (!poly) continue;
      std::vector<Point> moved;
      for (const Point& p : poly->vertices) moved.push_back({p.x + 0.5, p.y - 0.25});
      add(identity("translation-invariance", "estimates are invariant under rigid translations",
                   shape_summary(corpus[i]), 1.5, estimate_of({PolygonSpec{moved}}, 1.5),
                   cached(i, 1.5), 1e-7));
      break;  // one polygonal witness suffices
    }

    add(one_sided("domain-monotonicity", "larger domains have no larger constants",
                  "rect 1x1 in 2x1.5", 1.5, estimate_of({RectangleSpec{2.0, 1.5}}, 1.5),
                  estimate_of(sq, 1.5), 0.02));
    add(one_sided("domain-monotonicity", "larger domains have no larger constants",
                  "disk R=1 in R=2", 0.5, hq_ball(Exponent::make(2, 0.5), 2.0),
                  hq_ball(Exponent::make(2, 0.5), 1.0), 0.0));
  }

  // --- smoothing ---------------------------------------------------------------
  {
    const ConvexPolygon square({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    const SmoothedBoundary sm = smooth(square, 20, 720);
    add(violations("smoothing-sandwich",
                   "the mollified body is pinched between (1 -+ C/n) copies of the polygon",
                   "unit square, n=20", 0.0, sm.sandwich_holds() ? 0 : 1));

    double lx[3], ly[3];
    int k = 0;
    for (int n : {10, 20, 40}) {
      const SmoothedBoundary s = smooth(square, n, 720);
      lx[k] = std::log(1.0 / n);
      ly[k] = std::log(std::abs(s.perimeter() - 4.0));
      ++k;
    }
    const double sx = lx[0] + lx[1] + lx[2], sy = ly[0] + ly[1] + ly[2];
    const double sxx = lx[0] * lx[0] + lx[1] * lx[1] + lx[2] * lx[2];
    const double sxy = lx[0] * ly[0] + lx[1] * ly[1] + lx[2] * ly[2];
    const double order = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    add(one_sided("smoothing-order", "the perimeter error decays with order about 1/n",
                  "unit square, n in {10,20,40}", 0.0, 0.9, order, 0.0));
  }

  // --- existence dichotomy -----------------------------------------------------
  {
    const Exponent e = Exponent::make(2, 1.5);
    const ExistenceReport sq = existence_report({RectangleSpec{1.0, 1.0}}, e);
    long bad = 0;
    if (!sq.attained || !sq.ridge || !sq.ridge->is_unique_point) ++bad;
    if (sq.ridge && distance(sq.ridge->ridge_a, {0.5, 0.5}) > 1e-6) ++bad;
    add(violations("existence-bounded", "bounded convex domains attain, ridge at the incenter",
                   "unit square", 1.5, bad));

    const ExistenceReport ep = existence_report({EpigraphSpec{1.0, "log"}}, e);
    add(violations("existence-epigraph", "a blow-up epigraph has empty ridge and never attains",
                   "epigraph w=1", 1.5, ep.attained ? 1 : 0));

    const ExistenceReport hs = existence_report({HalfStripSpec{1.0}}, e);
    add(violations("existence-halfstrip",
                   "the unbounded half-strip attains for 1 < q < 2 with a half-line ridge",
                   "halfstrip w=1", 1.5,
                   (hs.attained && !hs.ridge_description.empty()) ? 0 : 1));

    const ExistenceReport hz = existence_report({HalfStripSpec{1.0}}, Exponent::make(2, 0.5));
    add(violations("vanishing-halfstrip", "unbounded domains with q < 1 have constant zero",
                   "halfstrip w=1", 0.5, hz.value_is_zero ? 0 : 1));
    const double eps = 1e-3;
    const double L = vanishing_witness_length(1.0, 0.5, eps);
    const double witness_ratio = (2.0 * pi + 2.0 * L) / std::pow(pi + 2.0 * L, 2.0);
    add(one_sided("vanishing-witness", "an explicit stadium pushes the ratio below any epsilon",
                  "halfstrip w=1", 0.5, witness_ratio, eps, 0.0));

    const auto walk = nonexistence_demo(EpigraphSpec{1.0, "log"}, e, 12);
    long bad_walk = 0;
    for (std::size_t i = 1; i < walk.size(); ++i)
      if (!(walk[i].ratio < walk[i - 1].ratio)) ++bad_walk;
    add(violations("nonexistence-walk",
                   "translate-and-inflate strictly decreases the ratio inside the epigraph",
                   "epigraph w=1", 1.5, bad_walk));
  }

  // --- approach of the limit exponent ------------------------------------------
  {
    const ShapeSpec sq{RectangleSpec{1.0, 1.0}};
    double prev = std::numeric_limits<double>::infinity();
    long bad = 0;
    double last = 0.0;
    for (double q : {1.9, 1.95, 1.99}) {
      last = estimate_of(sq, q);
      if (!(last < prev)) ++bad;
      if (!(last >= q_limit_value(2) * (1.0 - 1e-9))) ++bad;
      prev = last;
    }
    add(violations("q-limit-approach",
                   "estimates decrease toward the isoperimetric constant as q approaches 2",
                   "unit square", 1.99, bad));
    add(one_sided("q-limit-approach-close", "the estimate lands near 2 sqrt(pi) at q = 1.99",
                  "unit square", 1.99, last, q_limit_value(2) * 1.02, 0.0));
  }

  // --- the scalar minimization lemma --------------------------------------------
  {
    std::mt19937_64 rng(seed ^ 0x2545f491u);
    auto grid_min = [](const PhiParams& p, double* arg) {
      double best = std::numeric_limits<double>::infinity();
      double bt = 0.0;
      for (int k = 0; k <= 2400; ++k) {
        const double t = std::pow(10.0, -6.0 + 12.0 * k / 2400.0);
        const double v = (p.a + t * p.b) / std::pow(p.c + std::pow(t, p.beta) * p.d, 1.0 / p.beta);
        if (v < best) {
          best = v;
          bt = t;
        }
      }
      // golden refinement
      double lo = bt / std::pow(10.0, 12.0 / 2400.0), hi = bt * std::pow(10.0, 12.0 / 2400.0);
      const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
      auto f = [&](double t) {
        return (p.a + t * p.b) / std::pow(p.c + std::pow(t, p.beta) * p.d, 1.0 / p.beta);
      };
      double f1 = f(x1), f2 = f(x2);
      for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
        if (f1 <= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - invphi * (hi - lo);
          f1 = f(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + invphi * (hi - lo);
          f2 = f(x2);
        }
      }
      if (arg) *arg = 0.5 * (lo + hi);
      return std::min(best, std::min(f1, f2));
    };

    for (double beta : {0.3, 0.5, 0.8}) {
      double worst_v = 0.0, worst_t = 0.0;
      for (int k = 0; k < 40; ++k) {
        PhiParams p;
        p.a = 0.7 + 0.7 * u01(rng);
        p.b = 0.7 + 0.7 * u01(rng);
        p.c = 0.7 + 0.7 * u01(rng);
        p.d = 0.7 + 0.7 * u01(rng);
        p.beta = beta;
        const PhiMinimum m = phi_beta_min(p);
        double targ = 0.0;
        const double g = grid_min(p, &targ);
        worst_v = std::max(worst_v, std::abs(g - m.value) / m.value);
        worst_t = std::max(worst_t, std::abs(targ - *m.minimizer) / *m.minimizer);
      }
      add(one_sided("phi-closed-form",
                    "the closed-form scalar minimum matches a grid-plus-refinement search",
                    "random coefficients", beta, worst_v, 1e-8, 0.0));
      add(one_sided("phi-minimizer", "the closed-form minimizer location matches the search",
                    "random coefficients", beta, worst_t, 1e-6, 0.0));
    }
    for (double beta : {1.0, 1.5}) {
      long bad = 0;
      for (int k = 0; k < 40; ++k) {
        PhiParams p;
        p.a = 0.7 + 0.7 * u01(rng);
        p.b = 0.7 + 0.7 * u01(rng);
        p.c = 0.7 + 0.7 * u01(rng);
        p.d = 0.7 + 0.7 * u01(rng);
        p.beta = beta;
        const PhiMinimum m = phi_beta_min(p);
        const double g = grid_min(p, nullptr);
        if (g < m.value * (1.0 - 1e-9)) ++bad;
        if (g > m.value * (1.0 + 1e-4)) ++bad;
      }
      add(violations("phi-superlinear-floor",
                     "for beta >= 1 the search approaches the unattained boundary infimum from "
                     "above",
                     "random coefficients", beta, bad));
    }
  }

  // --- spectral bound consistency ------------------------------------------------
  for (double q : qs) {
    if (q <= 1.0) continue;
    const Exponent e = Exponent::make(2, q);
    const double h1 = 2.0;
    const double hq_sat = comparison_constants(2, q).upper * std::pow(h1, 2.0 / q - 1.0);
    const SpectralBounds sb = cheeger_spectral_bounds(h1, hq_sat, e);
    add(identity("spectral-consistency",
                 "saturating the upper comparison reproduces the classical spectral bound",
                 "exponent algebra", q, sb.generalized, sb.classical, 1e-10));
  }

  for (const CheckResult& c : rep.results)
    if (c.passed)
      ++rep.passed_count;
    else
      ++rep.failed_count;
  return rep;
}

nlohmann::ordered_json report_to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["corpus"] = r.corpus_description;
  j["qs"] = r.qs;
  j["seed"] = r.seed;
  j["timestamp"] = r.timestamp;
  j["passed"] = r.passed_count;
  j["failed"] = r.failed_count;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.results) {
    nlohmann::ordered_json e;
    e["check_id"] = c.check_id;
    e["claim"] = c.claim;
    e["kind"] = c.kind;
    e["shape"] = c.shape;
    e["q"] = c.q;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["margin"] = c.margin;
    e["passed"] = c.passed;
    arr.push_back(std::move(e));
  }
  j["results"] = std::move(arr);
  return j;
}

std::string report_to_markdown(const Report& r) {
  std::ostringstream o;
  o << "# Verification report\n\n";
  o << "Corpus: " << r.corpus_description << "\n\n";
  o << "Seed: " << r.seed << "  \nGenerated: " << r.timestamp << "\n\n";
  o << "**" << r.passed_count << " passed, " << r.failed_count << " failed**\n\n";
  o << "| check | shape | q | lhs | rhs | margin | status |\n";
  o << "|---|---|---|---|---|---|---|\n";
  o.precision(10);
  for (const CheckResult& c : r.results)
    o << "| " << c.check_id << " | " << c.shape << " | " << c.q << " | " << c.lhs << " | " << c.rhs
      << " | " << c.margin << " | " << (c.passed ? "pass" : "FAIL") << " |\n";
  return o.str();
}

void write_report_files(const Report& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream json_out(fs::path(out_dir) / "report.json");
    json_out << report_to_json(r).dump(2) << "\n";
  }
  {
    std::ofstream md_out(fs::path(out_dir) / "report.md");
    md_out << report_to_markdown(r);
  }
  {
    PlotSpec plot;
    plot.title = "Two-sided comparison: hq against the sharp lower combination";
    plot.x_label = "C_lower * h1^(2/q-1)";
    plot.y_label = "hq estimate";
    plot.identity_line = true;
    PlotSeries s;
    s.label = "corpus shapes";
    for (const auto& p : r.sandwich_points) s.points.push_back({p[0], p[1]});
    plot.series.push_back(std::move(s));
    write_svg((fs::path(out_dir) / "sandwich.svg").string(), plot);
  }
  {
    PlotSpec plot;
    plot.title = "Elongation decay at q = 1/2";
    plot.x_label = "size";
    plot.y_label = "ratio";
    plot.log_x = true;
    plot.log_y = true;
    PlotSeries st;
    st.label = "stadium";
    st.color = "#d62728";
    st.draw_line = true;
    for (const auto& p : r.stadium_decay) st.points.push_back({p[0], p[1]});
    PlotSeries el;
    el.label = "ellipse";
    el.color = "#2ca02c";
    el.draw_line = true;
    for (const auto& p : r.ellipse_decay) el.points.push_back({p[0], p[1]});
    plot.series.push_back(std::move(st));
    plot.series.push_back(std::move(el));
    write_svg((fs::path(out_dir) / "elongation.svg").string(), plot);
  }
}

}  // namespace cheeger
