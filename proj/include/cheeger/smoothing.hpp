#pragma once

#include <vector>

#include "cheeger/geometry.hpp"

namespace cheeger {

// Smooth approximant E_n = { j_n < 1 } of a convex polygon, where j_n is the
// gauge mollified by a bump supported on the ball of radius 1/n. Sampled as a
// radial boundary about the polygon's inradius center.
struct SmoothedBoundary {
  Point center;                   // star center used for the radial representation
  int n = 0;                      // mollification index
  double lipschitz = 0.0;         // C_E of the gauge about the center
  std::vector<double> theta;      // sampled directions
  std::vector<double> r_polygon;  // radial function of E
  std::vector<double> r_smooth;   // radial function of E_n

  std::vector<Point> polyline() const;
  double perimeter() const;
  // (1 - C_E/n) r_E <= r_{E_n} <= (1 + C_E/n) r_E at every sample.
  bool sandwich_holds(double slack = 1e-9) const;
};

// Boundary of E_n at `angular_resolution` equally spaced directions; each radius
// solves j_n(r theta) = 1 by bisection, j_n evaluated with a fixed 16x16
// Gauss-Legendre rule in polar coordinates over the mollifier ball.
// Throws RefineNError when C_E/n is too large to certify the sandwich.
SmoothedBoundary smooth(const ConvexPolygon& p, int n, int angular_resolution);

// Serial reference for the direction loop, kept for testing the parallel path.
SmoothedBoundary smooth_serial(const ConvexPolygon& p, int n, int angular_resolution);

}  // namespace cheeger
