#include "cheeger/shapes.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cheeger {

using nlohmann::json;
using std::numbers::pi;

namespace {

double positive_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw PreconditionError(std::string("shape field '") + key + "' missing or not a number");
  const double v = j[key].get<double>();
  if (!(v > 0) || !std::isfinite(v))
    throw PreconditionError(std::string("shape field '") + key + "' must be positive and finite");
  return v;
}

Point parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw PreconditionError("point must be a [x, y] array of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

struct BoundingCircle {
  Point center;
  double radius;
};

BoundingCircle bounding_circle(const ShapeSpec& s);

struct BoundingVisitor {
  BoundingCircle operator()(const DiskSpec& d) const { return {d.center, d.radius}; }
  BoundingCircle operator()(const PolygonSpec& p) const {
    const ConvexPolygon poly(p.vertices);
    const Point c = centroid(poly);
    double r = 0.0;
    for (const Point& v : poly.vertices()) r = std::max(r, distance(c, v));
    return {c, r};
  }
  BoundingCircle operator()(const RectangleSpec& r) const {
    return {{0.5 * r.width, 0.5 * r.height}, 0.5 * std::hypot(r.width, r.height)};
  }
  BoundingCircle operator()(const StadiumSpec& s) const {
    return {{0.5 * s.length, 0.0}, 0.5 * s.length + s.radius};
  }
  BoundingCircle operator()(const EllipseSpec& e) const {
    return {{0.0, 0.0}, std::max(e.a, e.b)};
  }
  BoundingCircle operator()(const HalfStripSpec&) const {
    throw PreconditionError("unbounded member in a union");
  }
  BoundingCircle operator()(const EpigraphSpec&) const {
    throw PreconditionError("unbounded member in a union");
  }
  BoundingCircle operator()(const UnionSpec&) const {
    throw PreconditionError("nested unions are not supported");
  }
};

BoundingCircle bounding_circle(const ShapeSpec& s) { return std::visit(BoundingVisitor{}, s.v); }

}  // namespace

ShapeSpec parse_shape(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw PreconditionError("shape file must be an object with a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "disk") {
    DiskSpec d;
    d.radius = positive_number(j, "radius");
    d.center = j.contains("center") ? parse_point(j["center"]) : Point{0, 0};
    return {d};
  }
  if (kind == "polygon") {
    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].size() < 3)
      throw PreconditionError("polygon needs a 'vertices' array with at least 3 points");
    PolygonSpec p;
    for (const auto& v : j["vertices"]) p.vertices.push_back(parse_point(v));
    ConvexPolygon check(p.vertices);  // validate convex, non-degenerate
    return {p};
  }
  if (kind == "rectangle")
    return {RectangleSpec{positive_number(j, "width"), positive_number(j, "height")}};
  if (kind == "stadium")
    return {StadiumSpec{positive_number(j, "radius"), positive_number(j, "length")}};
  if (kind == "ellipse") return {EllipseSpec{positive_number(j, "a"), positive_number(j, "b")}};
  if (kind == "halfstrip") {
    HalfStripSpec h;
    h.halfwidth = positive_number(j, "halfwidth");
    if (j.contains("length") && j["length"].is_number()) h.length = positive_number(j, "length");
    return {h};
  }
  if (kind == "epigraph") {
    EpigraphSpec e;
    e.halfwidth = positive_number(j, "halfwidth");
    if (j.contains("profile")) e.profile = j["profile"].get<std::string>();
    if (e.profile != "log") throw PreconditionError("unknown epigraph profile: " + e.profile);
    return {e};
  }
  if (kind == "union") {
    if (!j.contains("members") || !j["members"].is_array() || j["members"].empty())
      throw PreconditionError("union needs a non-empty 'members' array");
    UnionSpec u;
    for (const auto& m : j["members"]) u.members.push_back(parse_shape(m));
    u.disjoint = j.value("disjoint", false);
    certify_disjoint(u);
    return {u};
  }
  throw PreconditionError("unknown shape kind: " + kind);
}

nlohmann::json shape_to_json(const ShapeSpec& s) {
  struct Visitor {
    json operator()(const DiskSpec& d) const {
      return {{"kind", "disk"}, {"center", {d.center.x, d.center.y}}, {"radius", d.radius}};
    }
    json operator()(const PolygonSpec& p) const {
      json verts = json::array();
      for (const Point& v : p.vertices) verts.push_back({v.x, v.y});
      return {{"kind", "polygon"}, {"vertices", verts}};
    }
    json operator()(const RectangleSpec& r) const {
      return {{"kind", "rectangle"}, {"width", r.width}, {"height", r.height}};
    }
    json operator()(const StadiumSpec& s) const {
      return {{"kind", "stadium"}, {"radius", s.radius}, {"length", s.length}};
    }
    json operator()(const EllipseSpec& e) const {
      return {{"kind", "ellipse"}, {"a", e.a}, {"b", e.b}};
    }
    json operator()(const HalfStripSpec& h) const {
      json out = {{"kind", "halfstrip"}, {"halfwidth", h.halfwidth}};
      if (std::isfinite(h.length)) out["length"] = h.length;
      return out;
    }
    json operator()(const EpigraphSpec& e) const {
      return {{"kind", "epigraph"}, {"halfwidth", e.halfwidth}, {"profile", e.profile}};
    }
    json operator()(const UnionSpec& u) const {
      json members = json::array();
      for (const ShapeSpec& m : u.members) members.push_back(shape_to_json(m));
      return {{"kind", "union"}, {"members", members}, {"disjoint", u.disjoint}};
    }
  };
  return std::visit(Visitor{}, s.v);
}

ShapeSpec load_shape_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open shape file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw PreconditionError("shape file is not valid JSON: " + std::string(e.what()));
  }
  return parse_shape(j);
}

bool is_bounded(const ShapeSpec& s) {
  if (const auto* h = std::get_if<HalfStripSpec>(&s.v)) return std::isfinite(h->length);
  if (std::holds_alternative<EpigraphSpec>(s.v)) return false;
  if (const auto* u = std::get_if<UnionSpec>(&s.v)) {
    for (const ShapeSpec& m : u->members)
      if (!is_bounded(m)) return false;
  }
  return true;
}

bool is_union(const ShapeSpec& s) { return std::holds_alternative<UnionSpec>(s.v); }

std::string shape_summary(const ShapeSpec& s) {
  struct Visitor {
    std::string operator()(const DiskSpec& d) const {
      std::ostringstream o;
      o << "disk R=" << d.radius;
      return o.str();
    }
    std::string operator()(const PolygonSpec& p) const {
      return "polygon n=" + std::to_string(p.vertices.size());
    }
    std::string operator()(const RectangleSpec& r) const {
      std::ostringstream o;
      o << "rectangle " << r.width << "x" << r.height;
      return o.str();
    }
    std::string operator()(const StadiumSpec& s) const {
      std::ostringstream o;
      o << "stadium r=" << s.radius << " d=" << s.length;
      return o.str();
    }
    std::string operator()(const EllipseSpec& e) const {
      std::ostringstream o;
      o << "ellipse " << e.a << "x" << e.b;
      return o.str();
    }
    std::string operator()(const HalfStripSpec& h) const {
      std::ostringstream o;
      o << "halfstrip w=" << h.halfwidth;
      if (std::isfinite(h.length))
        o << " L=" << h.length;
      else
        o << " L=inf";
      return o.str();
    }
    std::string operator()(const EpigraphSpec& e) const {
      std::ostringstream o;
      o << "epigraph w=" << e.halfwidth << " (" << e.profile << ")";
      return o.str();
    }
    std::string operator()(const UnionSpec& u) const {
      return "union of " + std::to_string(u.members.size());
    }
  };
  return std::visit(Visitor{}, s.v);
}

void certify_disjoint(const UnionSpec& u) {
  if (u.members.empty()) throw PreconditionError("union needs at least one member");
  std::vector<BoundingCircle> circles;
  circles.reserve(u.members.size());
  for (const ShapeSpec& m : u.members) circles.push_back(bounding_circle(m));
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j)
      if (distance(circles[i].center, circles[j].center) <=
          circles[i].radius + circles[j].radius)
        throw PreconditionError("union members " + std::to_string(i) + " and " +
                                std::to_string(j) + " fail the bounding-circle separation test");
}

ConvexPolygon polygonize(const ShapeSpec& s, int resolution) {
  if (resolution < 8) throw PreconditionError("polygonization resolution too small");
  struct Visitor {
    int res;
    ConvexPolygon operator()(const DiskSpec& d) const {
      std::vector<Point> v;
      v.reserve(res);
      for (int k = 0; k < res; ++k) {
        const double th = 2.0 * pi * k / res;
        v.push_back({d.center.x + d.radius * std::cos(th), d.center.y + d.radius * std::sin(th)});
      }
      return ConvexPolygon(std::move(v));
    }
    ConvexPolygon operator()(const PolygonSpec& p) const { return ConvexPolygon(p.vertices); }
    ConvexPolygon operator()(const RectangleSpec& r) const {
      return ConvexPolygon({{0, 0}, {r.width, 0}, {r.width, r.height}, {0, r.height}});
    }
    ConvexPolygon operator()(const StadiumSpec& s) const {
      std::vector<Point> v;
      const int arc = std::max(res / 2, 8);
      for (int k = 0; k <= arc; ++k) {
        const double th = -0.5 * pi + pi * k / arc;
        v.push_back({s.length + s.radius * std::cos(th), s.radius * std::sin(th)});
      }
      for (int k = 0; k <= arc; ++k) {
        const double th = 0.5 * pi + pi * k / arc;
        v.push_back({s.radius * std::cos(th), s.radius * std::sin(th)});
      }
      return convex_hull(v);
    }
    ConvexPolygon operator()(const EllipseSpec& e) const {
      std::vector<Point> v;
      v.reserve(res);
      for (int k = 0; k < res; ++k) {
        const double th = 2.0 * pi * k / res;
        v.push_back({e.a * std::cos(th), e.b * std::sin(th)});
      }
      return ConvexPolygon(std::move(v));
    }
    ConvexPolygon operator()(const HalfStripSpec& h) const {
      if (!std::isfinite(h.length))
        throw PreconditionError("cannot polygonize an unbounded half-strip; truncate first");
      return ConvexPolygon(
          {{0, -h.halfwidth}, {h.length, -h.halfwidth}, {h.length, h.halfwidth}, {0, h.halfwidth}});
    }
    ConvexPolygon operator()(const EpigraphSpec&) const {
      throw PreconditionError("cannot polygonize an unbounded epigraph");
    }
    ConvexPolygon operator()(const UnionSpec&) const {
      throw PreconditionError("a union is not a single convex body");
    }
  };
  return std::visit(Visitor{resolution}, s.v);
}

double epigraph_profile(const EpigraphSpec& e, double t) {
  const double u = t / e.halfwidth;
  if (!(std::abs(u) < 1.0)) return std::numeric_limits<double>::infinity();
  return std::log(1.0 / (1.0 - u * u));
}

double ellipse_perimeter(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw PreconditionError("ellipse semi-axes must be positive");
  if (a < b) std::swap(a, b);
  const double m = 1.0 - (b / a) * (b / a);  // squared eccentricity
  if (m == 0.0) return 2.0 * pi * a;

  double an = 1.0;
  double bn = std::sqrt(1.0 - m);
  double cn = std::sqrt(m);
  double csum = 0.5 * cn * cn;
  double pow2 = 1.0;
  while (cn > 1e-17 * an) {
    const double an1 = 0.5 * (an + bn);
    const double cn1 = 0.5 * (an - bn);
    bn = std::sqrt(an * bn);
    an = an1;
    cn = cn1;
    pow2 *= 2.0;
    csum += 0.5 * pow2 * cn * cn;
  }
  const double K = 0.5 * pi / an;
  const double E = K * (1.0 - csum);
  return 4.0 * a * E;
}

}  // namespace cheeger
