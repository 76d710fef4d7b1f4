#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cheeger/shapes.hpp"
#include "cheeger/solver.hpp"

namespace cheeger {

// One certified inequality/identity. For one-sided checks passed means
// lhs <= rhs * (1 + margin); for identities |lhs - rhs| <= margin * max(|lhs|,|rhs|).
// Boolean checks report a violation count as lhs against rhs = 0.
struct CheckResult {
  std::string check_id;
  std::string claim;  // self-contained statement of what is being certified
  std::string kind;   // "one_sided" | "identity" | "violations"
  std::string shape;
  double q = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passed = false;
};

struct Report {
  std::vector<CheckResult> results;
  std::string corpus_description;
  std::vector<double> qs;
  std::uint64_t seed = 0;
  std::string timestamp;  // excluded from reproducibility comparisons
  int passed_count = 0;
  int failed_count = 0;

  // Plot payloads gathered while running.
  std::vector<std::array<double, 2>> sandwich_points;  // (C_lower * h1^(2/q-1), hq)
  std::vector<std::array<double, 2>> stadium_decay;    // (size, ratio) at q = 1/2
  std::vector<std::array<double, 2>> ellipse_decay;
};

struct VerifyOptions {
  SolverOptions solver{.vertex_count = 28,
                       .multistarts = 6,
                       .max_iters = 15000,
                       .tol_rel = 1e-8,
                       .rng_seed = 0,
                       .resolution = 192,
                       .restarts = 3};
};

// Deterministic default corpus: disk, unit square, 3:1 rectangle, two seeded
// random hexagons, a two-disk union, a bounded stadium and a bounded ellipse.
std::vector<ShapeSpec> default_corpus(std::uint64_t seed);
std::vector<double> default_qs();

Report run_suite(const std::vector<ShapeSpec>& corpus, const std::vector<double>& qs,
                 std::uint64_t seed, const VerifyOptions& opt = {});

nlohmann::ordered_json report_to_json(const Report& r);
std::string report_to_markdown(const Report& r);

// report.json, report.md, sandwich.svg, elongation.svg under out_dir.
void write_report_files(const Report& r, const std::string& out_dir);

}  // namespace cheeger
