#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cheeger/closed_forms.hpp"
#include "cheeger/geometry.hpp"
#include "cheeger/shapes.hpp"

namespace cheeger {

struct SolverOptions {
  int vertex_count = 48;      // free vertices of a candidate polygon
  int multistarts = 8;
  int max_iters = 36000;      // objective-evaluation budget per start
  double tol_rel = 1e-8;      // simplex-spread convergence threshold
  std::uint64_t rng_seed = 0; // all random restarts are deterministic given this
  int resolution = 256;       // polygonization of curved domains
  int restarts = 4;           // simplex restarts (step shrinks by half) per start
};

enum class SolveMethod { analytic, polygon_opt, rounded_family, grid };

// Upper-bound estimate of the ratio constant, paired with the isoperimetric
// floor 2 sqrt(pi) A_max^{1/2-1/q}. The optimizer output is a certified
// candidate, not a proven minimizer.
struct CheegerEstimate {
  double value = 0.0;
  std::optional<ConvexPolygon> minimizer;
  double lower_bound = 0.0;
  SolveMethod method = SolveMethod::polygon_opt;
  long iterations = 0;
  bool converged = false;
};

double isoperimetric_floor(double max_area, const Exponent& e);

// Closed-form area of a bounded shape (sum over union members).
double exact_shape_area(const ShapeSpec& s);

// Minimizes perimeter/area^{1/q} over convex polygons inside a convex domain:
// derivative-free descent on the vertex coordinates with re-convexification and
// re-containment after every step, best over deterministic multistarts.
// Disks are answered by the exact ball value. Unbounded half-strips (1 < q < 2)
// are solved by growing truncations until the estimate stabilizes.
CheegerEstimate solve_convex(const ShapeSpec& domain, const Exponent& e,
                             const SolverOptions& opt = {});

// Restricted one-parameter oracle: inner parallel body at offset t with corner
// arcs of radius t, minimized by a coarse scan plus golden-section refinement.
CheegerEstimate solve_rounded_family(const ConvexPolygon& domain, const Exponent& e);

// Disjoint unions: the minimum rule for q >= 1; for q < 1 a joint optimization
// over per-member candidates (exact per-ball radii search when members are disks).
CheegerEstimate solve_union(const ShapeSpec& domain, const Exponent& e,
                            const SolverOptions& opt = {});

struct ExistenceReport {
  bool attained = false;
  bool value_is_zero = false;
  std::string regime;             // bounded | halfstrip | epigraph
  std::string reason;
  std::string ridge_description;  // empty when the high ridge set is empty
  std::optional<InradiusResult> ridge;
};

// Attainment dichotomy: bounded domains attain; an unbounded half-strip attains
// for 1 < q < 2 (ridge contains a half-line); a blow-up epigraph never does;
// any unbounded domain with q < 1 has constant 0.
ExistenceReport existence_report(const ShapeSpec& domain, const Exponent& e);

struct NonexistenceStep {
  double shift = 0.0;  // rightward translation applied at this step
  double scale = 0.0;  // disk growth factor over the previous step
  double ratio = 0.0;
};

// Walks an inscribed disk rightward into the widening end of the epigraph,
// inflating it at each step with containment verified; the ratios strictly
// decrease toward the full-strip value. growth = 1 freezes the radius.
std::vector<NonexistenceStep> nonexistence_demo(const EpigraphSpec& domain, const Exponent& e,
                                                int steps, double growth = 0.5);

enum class ElongationFamily { stadium, ellipse, rectangle };

struct ElongationPoint {
  double size = 0.0;
  double perimeter = 0.0;
  double area = 0.0;
  double ratio = 0.0;
};

struct ElongationResult {
  std::vector<ElongationPoint> points;
  double slope = 0.0;  // least-squares log-log slope of ratio against size
};

// Exact family formulas: stadium (r = 1, length d), ellipse (semi-axes L and 1),
// rectangle (width 2, length L).
ElongationResult elongation_demo(ElongationFamily family, const Exponent& e,
                                 std::span<const double> sizes);

// Smallest stadium length (by doubling) whose ratio drops below eps: a witness
// that the constant vanishes on unbounded sets for q < 1.
double vanishing_witness_length(double halfwidth, double q, double eps);

}  // namespace cheeger
