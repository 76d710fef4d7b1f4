#include "cheeger/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cheeger/linprog.hpp"

namespace cheeger {

double norm(Point p) { return std::hypot(p.x, p.y); }
double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

double coordinate_scale(std::span<const Point> pts) {
  double s = 0.0;
  for (const Point& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return std::max(s, 1e-300);
}

bool all_finite(std::span<const Point> pts) {
  for (const Point& p : pts)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  return true;
}

// Merges duplicates and collinear vertices of a CCW convex chain.
std::vector<Point> simplify_chain(std::vector<Point> v, double scale) {
  const double dup_tol = 1e-14 * scale;
  std::vector<Point> out;
  out.reserve(v.size());
  for (const Point& p : v) {
    if (out.empty() || distance(out.back(), p) > dup_tol) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= dup_tol) out.pop_back();

  const double col_tol = kConvexEps * scale * scale;
  bool changed = true;
  while (changed && out.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && out.size() > 3; ++i) {
      const Point& a = out[(i + out.size() - 1) % out.size()];
      const Point& b = out[i];
      const Point& c = out[(i + 1) % out.size()];
      if (cross(b - a, c - b) <= col_tol) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace

double chain_area(std::span<const Point> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double chain_perimeter(std::span<const Point> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += distance(pts[i], pts[(i + 1) % n]);
  return s;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) {
  if (vertices.size() < 3) throw DegenerateShapeError("polygon needs at least 3 vertices");
  if (!all_finite(vertices)) throw PreconditionError("polygon has non-finite coordinates");

  const double scale = coordinate_scale(vertices);
  double a = chain_area(vertices);
  if (a < 0) {
    std::reverse(vertices.begin(), vertices.end());
    a = -a;
  }
  if (a <= 1e-14 * scale * scale)
    throw DegenerateShapeError("polygon is degenerate (zero area)");

  const std::size_t n = vertices.size();
  const double tol = kConvexEps;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e1 = vertices[(i + 1) % n] - vertices[i];
    const Point e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    if (cross(e1, e2) < -tol * norm(e1) * norm(e2))
      throw PreconditionError("vertex chain is not convex");
  }

  verts_ = simplify_chain(std::move(vertices), scale);
  if (verts_.size() < 3) throw DegenerateShapeError("polygon is degenerate after normalization");
}

double area(const ConvexPolygon& p) { return chain_area(p.vertices()); }
double perimeter(const ConvexPolygon& p) { return chain_perimeter(p.vertices()); }

double diameter(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      best = std::max(best, distance(v[i], v[j]));
  return best;
}

Point centroid(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& s = v[i];
    const Point& t = v[(i + 1) % v.size()];
    const double w = s.x * t.y - t.x * s.y;
    a += w;
    cx += (s.x + t.x) * w;
    cy += (s.y + t.y) * w;
  }
  a *= 0.5;
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

void convex_hull_into(std::vector<Point>& pts, std::vector<Point>& out) {
  out.clear();
  if (pts.size() < 3) return;
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  const double scale = coordinate_scale(pts);
  const double tol = kConvexEps * scale * scale;

  // Lower chain then upper chain, both into `out`.
  for (const Point& p : pts) {
    while (out.size() >= 2 &&
           cross(out[out.size() - 1] - out[out.size() - 2], p - out[out.size() - 1]) <= tol)
      out.pop_back();
    out.push_back(p);
  }
  const std::size_t lower_end = out.size();
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (out.size() > lower_end &&
           cross(out[out.size() - 1] - out[out.size() - 2], *it - out[out.size() - 1]) <= tol)
      out.pop_back();
    out.push_back(*it);
  }
  out.pop_back();  // closing point duplicates the first
  if (out.size() < 3) out.clear();
}

ConvexPolygon convex_hull(std::span<const Point> points) {
  if (points.size() < 3) throw DegenerateShapeError("hull needs at least 3 points");
  if (!all_finite(points)) throw PreconditionError("hull input has non-finite coordinates");
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
            pts.end());

  const double scale = coordinate_scale(pts);
  const double tol = kConvexEps * scale * scale;
  auto build = [&](auto begin, auto end) {
    std::vector<Point> chain;
    for (auto it = begin; it != end; ++it) {
      while (chain.size() >= 2 &&
             cross(chain[chain.size() - 1] - chain[chain.size() - 2],
                   *it - chain[chain.size() - 1]) <= tol)
        chain.pop_back();
      chain.push_back(*it);
    }
    return chain;
  };

  std::vector<Point> lower = build(pts.begin(), pts.end());
  std::vector<Point> upper = build(pts.rbegin(), pts.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.size() < 3) throw DegenerateShapeError("hull input is collinear");
  return ConvexPolygon(std::move(lower));
}

std::vector<HalfPlane> edge_halfplanes(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  std::vector<HalfPlane> hs;
  hs.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point s = v[i];
    const Point t = v[(i + 1) % v.size()];
    Point n{t.y - s.y, s.x - t.x};  // outward for CCW
    const double len = norm(n);
    n = (1.0 / len) * n;
    hs.push_back({n, dot(n, s)});
  }
  return hs;
}

bool contains_point(const ConvexPolygon& p, Point x, double tol) {
  for (const HalfPlane& h : edge_halfplanes(p))
    if (dot(h.a, x) > h.b + tol) return false;
  return true;
}

void clip_against(std::vector<Point>& pts, std::span<const HalfPlane> window,
                  std::vector<Point>& scratch, double tol) {
  for (const HalfPlane& h : window) {
    if (pts.empty()) return;
    scratch.clear();
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& cur = pts[i];
      const Point& prev = pts[(i + n - 1) % n];
      const double dc = dot(h.a, cur) - h.b;
      const double dp = dot(h.a, prev) - h.b;
      const bool cin = dc <= tol;
      const bool pin = dp <= tol;
      if (cin) {
        if (!pin) {
          const double t = dp / (dp - dc);
          scratch.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
        }
        scratch.push_back(cur);
      } else if (pin) {
        const double t = dp / (dp - dc);
        scratch.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
      }
    }
    pts.swap(scratch);
  }
}

std::optional<ConvexPolygon> clip(const ConvexPolygon& subject, const ConvexPolygon& window) {
  std::vector<Point> pts(subject.vertices());
  std::vector<Point> scratch;
  const double scale = std::max(diameter(subject), diameter(window));
  clip_against(pts, edge_halfplanes(window), scratch, 1e-12 * scale);
  if (pts.size() < 3) return std::nullopt;
  if (std::abs(chain_area(pts)) <= 1e-13 * scale * scale) return std::nullopt;
  return convex_hull(pts);
}

InradiusResult inradius(const ConvexPolygon& p) {
  const auto hs = edge_halfplanes(p);
  const Point c0 = centroid(p);
  const double d = diameter(p);
  const std::size_t m = hs.size();

  // Variables (xp, xm, yp, ym, r) >= 0 with x = c0 + (xp - xm, yp - ym).
  // Constraints a_i·x + r <= b_i; RHS positive because c0 is interior.
  LinearProgram lp(m, 5);
  for (std::size_t i = 0; i < m; ++i) {
    lp.A[i] = {hs[i].a.x, -hs[i].a.x, hs[i].a.y, -hs[i].a.y, 1.0};
    lp.b[i] = hs[i].b - dot(hs[i].a, c0);
    if (lp.b[i] <= 0) throw DegenerateShapeError("centroid not interior; degenerate polygon");
  }
  lp.c = {0.0, 0.0, 0.0, 0.0, 1.0};
  const SimplexResult opt = solve_simplex(lp);
  if (!opt.ok) throw GeometryError("inradius LP failed");
  const double r = opt.objective;
  if (!(r > 0)) throw DegenerateShapeError("non-positive inradius");
  // A Chebyshev center: lies on the optimal face, so the face LPs below start
  // from a feasible basis.
  const Point cheb{c0.x + opt.x[0] - opt.x[1], c0.y + opt.x[2] - opt.x[3]};

  // Extremize four directions over the optimal face {x : a_i·x <= b_i - r}
  // to recover the ridge segment.
  const double relax = 1e-9 * d;
  auto face_extreme = [&](Point dir) {
    LinearProgram f(m, 4);
    for (std::size_t i = 0; i < m; ++i) {
      f.A[i] = {hs[i].a.x, -hs[i].a.x, hs[i].a.y, -hs[i].a.y};
      f.b[i] = std::max(hs[i].b - r - dot(hs[i].a, cheb) + relax, 0.0);
    }
    f.c = {dir.x, -dir.x, dir.y, -dir.y};
    const SimplexResult s = solve_simplex(f);
    if (!s.ok) throw GeometryError("ridge LP failed");
    return Point{cheb.x + s.x[0] - s.x[1], cheb.y + s.x[2] - s.x[3]};
  };

  const double inv = 1.0 / std::sqrt(2.0);
  const Point dirs[4] = {{1, 0}, {0, 1}, {inv, inv}, {inv, -inv}};
  Point best_a{}, best_b{};
  double best_ext = -1.0;
  for (const Point& dir : dirs) {
    const Point hi = face_extreme(dir);
    const Point lo = face_extreme({-dir.x, -dir.y});
    const double ext = distance(hi, lo);
    if (ext > best_ext) {
      best_ext = ext;
      best_a = lo;
      best_b = hi;
    }
  }

  InradiusResult res;
  res.r = r;
  if (best_ext <= 1e-6 * d) {
    const Point mid{0.5 * (best_a.x + best_b.x), 0.5 * (best_a.y + best_b.y)};
    res.ridge_a = res.ridge_b = mid;
    res.is_unique_point = true;
  } else {
    res.ridge_a = best_a;
    res.ridge_b = best_b;
    res.is_unique_point = false;
  }
  return res;
}

double gauge(const ConvexPolygon& p, Point x) {
  double g = 0.0;
  for (const HalfPlane& h : edge_halfplanes(p)) {
    if (h.b <= 0) throw PreconditionError("gauge requires the origin strictly inside");
    g = std::max(g, dot(h.a, x) / h.b);
  }
  return g;
}

GaugeInfo gauge_lipschitz(const ConvexPolygon& p) {
  GaugeInfo info;
  info.lipschitz = 0.0;
  info.origin_interior_margin = std::numeric_limits<double>::infinity();
  for (const HalfPlane& h : edge_halfplanes(p)) {
    if (h.b <= 0) throw PreconditionError("gauge requires the origin strictly inside");
    info.lipschitz = std::max(info.lipschitz, 1.0 / h.b);  // ||a_i|| = 1
    info.origin_interior_margin = std::min(info.origin_interior_margin, h.b);
  }
  return info;
}

ConvexPolygon scale_about(const ConvexPolygon& p, Point c, double t) {
  if (!(t > 0)) throw PreconditionError("scale factor must be positive");
  std::vector<Point> v;
  v.reserve(p.size());
  for (const Point& q : p.vertices()) v.push_back(c + t * (q - c));
  return ConvexPolygon(std::move(v));
}

ConvexPolygon translate(const ConvexPolygon& p, Point v) {
  std::vector<Point> w;
  w.reserve(p.size());
  for (const Point& q : p.vertices()) w.push_back(q + v);
  return ConvexPolygon(std::move(w));
}

}  // namespace cheeger
