#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "cheeger/shapes.hpp"

using namespace cheeger;
using nlohmann::json;
using std::numbers::pi;

TEST_CASE("parse_shape: disk, rectangle, union round trip") {
  const json disk = {{"kind", "disk"}, {"center", {1.0, 2.0}}, {"radius", 0.5}};
  const ShapeSpec d = parse_shape(disk);
  REQUIRE(std::holds_alternative<DiskSpec>(d.v));
  CHECK(std::get<DiskSpec>(d.v).radius == 0.5);
  CHECK(shape_to_json(d)["kind"] == "disk");

  const json uni = {{"kind", "union"},
                    {"members",
                     {{{"kind", "disk"}, {"center", {0.0, 0.0}}, {"radius", 0.5}},
                      {{"kind", "disk"}, {"center", {3.0, 0.0}}, {"radius", 1.0}}}},
                    {"disjoint", true}};
  const ShapeSpec u = parse_shape(uni);
  CHECK(is_union(u));
  CHECK(is_bounded(u));
}

TEST_CASE("parse_shape: validation failures") {
  CHECK_THROWS_AS(parse_shape(json{{"kind", "sphere"}}), PreconditionError);
  CHECK_THROWS_AS(parse_shape(json{{"kind", "disk"}, {"radius", -1.0}}), PreconditionError);
  CHECK_THROWS_AS(parse_shape(json{{"kind", "rectangle"}, {"width", 1.0}}), PreconditionError);
  // overlapping union rejected by the separation test
  const json overlap = {{"kind", "union"},
                        {"members",
                         {{{"kind", "disk"}, {"center", {0.0, 0.0}}, {"radius", 1.0}},
                          {{"kind", "disk"}, {"center", {1.5, 0.0}}, {"radius", 1.0}}}}};
  CHECK_THROWS_AS(parse_shape(overlap), PreconditionError);
  // non-convex polygon rejected
  const json bad_poly = {{"kind", "polygon"},
                         {"vertices", {{0.0, 0.0}, {2.0, 0.0}, {0.2, 0.2}, {0.0, 2.0}}}};
  CHECK_THROWS_AS(parse_shape(bad_poly), PreconditionError);
}

TEST_CASE("polygonize: areas approach the exact values") {
  const ShapeSpec disk{DiskSpec{{0, 0}, 1.0}};
  CHECK(area(polygonize(disk, 256)) == doctest::Approx(pi).epsilon(1e-3));
  const ShapeSpec ell{EllipseSpec{2.0, 1.0}};
  CHECK(area(polygonize(ell, 256)) == doctest::Approx(2 * pi).epsilon(1e-3));
  const ShapeSpec st{StadiumSpec{1.0, 2.0}};
  CHECK(area(polygonize(st, 256)) == doctest::Approx(pi + 4.0).epsilon(1e-3));
  const ShapeSpec hs{HalfStripSpec{1.0, 10.0}};
  CHECK(area(polygonize(hs, 16)) == doctest::Approx(20.0).epsilon(1e-12));

  CHECK_THROWS_AS(polygonize(ShapeSpec{HalfStripSpec{1.0}}, 16), PreconditionError);
  CHECK_THROWS_AS(polygonize(ShapeSpec{EpigraphSpec{1.0, "log"}}, 16), PreconditionError);
}

TEST_CASE("epigraph profile blows up at the strip edges") {
  const EpigraphSpec e{1.0, "log"};
  CHECK(epigraph_profile(e, 0.0) == 0.0);
  CHECK(epigraph_profile(e, 0.9) > 1.0);
  CHECK(std::isinf(epigraph_profile(e, 1.0)));
  CHECK(epigraph_profile(e, -0.5) == epigraph_profile(e, 0.5));
}

TEST_CASE("ellipse_perimeter: circle, series oracle, degenerate limit") {
  CHECK(ellipse_perimeter(1.0, 1.0) == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(ellipse_perimeter(3.0, 3.0) == doctest::Approx(6 * pi).epsilon(1e-14));

  // numerical quadrature oracle: P = 4 a int_0^{pi/2} sqrt(1 - m sin^2 t) dt
  for (double b : {0.25, 0.5, 0.9}) {
    const double a = 1.0;
    const double m = 1.0 - b * b;
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = 0.5 * pi * (i + 0.5) / n;
      const double s = std::sin(t);
      sum += std::sqrt(1.0 - m * s * s);
    }
    const double oracle = 4.0 * a * (0.5 * pi / n) * sum;
    CHECK(ellipse_perimeter(a, b) == doctest::Approx(oracle).epsilon(1e-8));
  }

  // long thin ellipse approaches the doubled major axis
  CHECK(ellipse_perimeter(1000.0, 1.0) == doctest::Approx(4000.0).epsilon(2e-3));
  // symmetry in the arguments
  CHECK(ellipse_perimeter(2.0, 1.0) == ellipse_perimeter(1.0, 2.0));
}

TEST_CASE("shape_summary strings") {
  CHECK(shape_summary(ShapeSpec{DiskSpec{{0, 0}, 1.0}}) == "disk R=1");
  CHECK(shape_summary(ShapeSpec{RectangleSpec{3, 1}}) == "rectangle 3x1");
}
