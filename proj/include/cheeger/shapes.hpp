#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cheeger/geometry.hpp"

namespace cheeger {

struct DiskSpec {
  Point center;
  double radius = 1.0;
};

struct PolygonSpec {
  std::vector<Point> vertices;
};

// Axis-aligned [0, width] x [0, height].
struct RectangleSpec {
  double width = 1.0;
  double height = 1.0;
};

// Convex hull of two disks of equal radius with centers (0,0) and (length,0).
struct StadiumSpec {
  double radius = 1.0;
  double length = 1.0;
};

// Semi-axes (a, b), centered at the origin.
struct EllipseSpec {
  double a = 1.0;
  double b = 1.0;
};

// [0, length] x (-halfwidth, halfwidth); length = +inf for the unbounded strip.
struct HalfStripSpec {
  double halfwidth = 1.0;
  double length = std::numeric_limits<double>::infinity();
};

// { (x1, x2) : |x2| < halfwidth, x1 > f(x2) } with a convex profile f blowing up
// at both endpoints. Built-in profile "log": f(t) = log(1 / (1 - (t/halfwidth)^2)).
struct EpigraphSpec {
  double halfwidth = 1.0;
  std::string profile = "log";
};

struct ShapeSpec;

struct UnionSpec {
  std::vector<ShapeSpec> members;
  bool disjoint = false;  // caller-asserted; certify_disjoint() re-checks
};

struct ShapeSpec {
  std::variant<DiskSpec, PolygonSpec, RectangleSpec, StadiumSpec, EllipseSpec,
               HalfStripSpec, EpigraphSpec, UnionSpec>
      v;
};

ShapeSpec parse_shape(const nlohmann::json& j);
nlohmann::json shape_to_json(const ShapeSpec& s);
ShapeSpec load_shape_file(const std::string& path);

bool is_bounded(const ShapeSpec& s);
bool is_union(const ShapeSpec& s);
std::string shape_summary(const ShapeSpec& s);

// Verifies pairwise disjointness of union members through a conservative
// bounding-circle separation test; throws PreconditionError on failure.
void certify_disjoint(const UnionSpec& u);

// Polygonal discretization of a bounded convex shape (disks/ellipses/stadium
// arcs sampled at `resolution` boundary points). Unbounded kinds throw.
ConvexPolygon polygonize(const ShapeSpec& s, int resolution = 256);

double epigraph_profile(const EpigraphSpec& e, double t);

// Circumference of the ellipse with semi-axes a, b via the arithmetic-geometric
// mean form of the complete elliptic integral of the second kind.
double ellipse_perimeter(double a, double b);

}  // namespace cheeger
