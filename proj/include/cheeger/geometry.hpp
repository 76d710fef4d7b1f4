#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cheeger/errors.hpp"

namespace cheeger {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double t, Point p) { return {t * p.x, t * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p);
double distance(Point a, Point b);

// Relative tolerance for the consecutive-edge cross products of a convex chain.
inline constexpr double kConvexEps = 1e-12;

// Half-plane a·x <= b. Normals are unit length when produced by edge_halfplanes().
struct HalfPlane {
  Point a;
  double b = 0.0;
};

// Bounded convex body as a CCW vertex chain, at least 3 vertices, positive area.
// Construction normalizes: orientation fixed, duplicate and collinear vertices merged.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }

 private:
  std::vector<Point> verts_;
};

double area(const ConvexPolygon& p);
double perimeter(const ConvexPolygon& p);
double diameter(const ConvexPolygon& p);

// Area-weighted centroid; interior for a convex polygon.
Point centroid(const ConvexPolygon& p);

// Smallest CCW convex polygon containing the points. Throws DegenerateShapeError
// if all points are collinear.
ConvexPolygon convex_hull(std::span<const Point> points);

// One unit-normal half-plane per edge, a·x <= b inside.
std::vector<HalfPlane> edge_halfplanes(const ConvexPolygon& p);

bool contains_point(const ConvexPolygon& p, Point x, double tol = 0.0);

// Intersection of two convex polygons (Sutherland-Hodgman against the window's
// half-planes). Empty intersection is a valid result, not an error.
std::optional<ConvexPolygon> clip(const ConvexPolygon& subject, const ConvexPolygon& window);

// Allocation-free clipping core for hot loops. Clips `pts` in place against the
// half-planes, using `scratch` as the ping-pong buffer. Result may be empty or
// degenerate; caller decides what to do with tiny areas.
void clip_against(std::vector<Point>& pts, std::span<const HalfPlane> window,
                  std::vector<Point>& scratch, double tol);

// Shoelace area / edge-length sum of a raw CCW chain (no validation).
double chain_area(std::span<const Point> pts);
double chain_perimeter(std::span<const Point> pts);

// Non-throwing monotone-chain hull for hot loops: consumes `pts` as scratch
// (sorted in place) and fills `out`, which has fewer than 3 points when the
// input is degenerate.
void convex_hull_into(std::vector<Point>& pts, std::vector<Point>& out);

struct InradiusResult {
  double r = 0.0;
  Point ridge_a;           // ridge segment endpoints (equal for a point ridge)
  Point ridge_b;
  bool is_unique_point = true;
  Point center() const { return {0.5 * (ridge_a.x + ridge_b.x), 0.5 * (ridge_a.y + ridge_b.y)}; }
};

// Chebyshev problem: max r s.t. a_i·x + r <= b_i over the edge half-planes,
// solved by a dense simplex; the ridge (optimal face) is recovered by extremizing
// axis and diagonal directions over it.
InradiusResult inradius(const ConvexPolygon& p);

struct GaugeInfo {
  double lipschitz = 0.0;               // max_i ||a_i|| / b_i over normalized edges
  double origin_interior_margin = 0.0;  // min distance from the origin to an edge line
};

// Minkowski functional of p about the origin, max_i a_i·x / b_i. Requires the
// origin strictly inside (every b_i > 0).
double gauge(const ConvexPolygon& p, Point x);
GaugeInfo gauge_lipschitz(const ConvexPolygon& p);

ConvexPolygon scale_about(const ConvexPolygon& p, Point c, double t);
ConvexPolygon translate(const ConvexPolygon& p, Point v);

}  // namespace cheeger
