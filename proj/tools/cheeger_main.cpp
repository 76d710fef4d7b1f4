#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cheeger/constants.hpp"
#include "cheeger/smoothing.hpp"
#include "cheeger/solver.hpp"
#include "cheeger/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitArgs = 2;
constexpr int kExitShapeFile = 3;
constexpr int kExitNotConverged = 4;

std::string default_out_dir() {
  if (const char* env = std::getenv("CHEEGER_OUT_DIR")) return env;
  return ".";
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp-" + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

ordered_json estimate_json(const cheeger::ShapeSpec& shape, double q,
                           const cheeger::CheegerEstimate& est) {
  ordered_json j;
  j["shape"] = cheeger::shape_summary(shape);
  j["q"] = q;
  j["value"] = est.value;
  j["lower_bound"] = est.lower_bound;
  switch (est.method) {
    case cheeger::SolveMethod::analytic: j["method"] = "analytic"; break;
    case cheeger::SolveMethod::polygon_opt: j["method"] = "polygon_opt"; break;
    case cheeger::SolveMethod::rounded_family: j["method"] = "rounded_family"; break;
    case cheeger::SolveMethod::grid: j["method"] = "grid"; break;
  }
  j["iterations"] = est.iterations;
  j["converged"] = est.converged;
  if (est.minimizer) {
    ordered_json verts = ordered_json::array();
    for (const cheeger::Point& p : est.minimizer->vertices()) verts.push_back({p.x, p.y});
    j["minimizer"] = std::move(verts);
  } else {
    j["minimizer"] = nullptr;
  }
  return j;
}

struct ComputeArgs {
  std::string shape_file;
  double q = 1.0;
  std::string out_dir = default_out_dir();
  std::uint64_t seed = 0;
  int vertices = 48;
  int multistarts = 8;
  int max_iters = 36000;
  int resolution = 256;
};

int run_compute(const ComputeArgs& a, bool union_mode) {
  const cheeger::Exponent e = cheeger::Exponent::make(2, a.q);
  const cheeger::ShapeSpec shape = cheeger::load_shape_file(a.shape_file);
  cheeger::SolverOptions opt;
  opt.vertex_count = a.vertices;
  opt.multistarts = a.multistarts;
  opt.max_iters = a.max_iters;
  opt.resolution = a.resolution;
  opt.rng_seed = a.seed;

  const cheeger::CheegerEstimate est = union_mode ? cheeger::solve_union(shape, e, opt)
                                                  : cheeger::solve_convex(shape, e, opt);
  const fs::path out = fs::path(a.out_dir) / "estimate.json";
  write_atomic(out, estimate_json(shape, a.q, est).dump(2) + "\n");
  std::cout << cheeger::shape_summary(shape) << "  q=" << a.q << "  value=" << est.value
            << "  floor=" << est.lower_bound << "  -> " << out.string() << "\n";
  return est.converged ? kExitOk : kExitNotConverged;
}

int run_constants(int N, double q, const std::string& out_dir) {
  const cheeger::ConstantBundle b = cheeger::constant_bundle(N, q);
  ordered_json j;
  j["N"] = b.N;
  j["q"] = b.q;
  j["talenti_limit"] = b.talenti;
  j["A"] = b.A ? ordered_json(*b.A) : ordered_json(nullptr);
  j["B"] = b.B ? ordered_json(*b.B) : ordered_json(nullptr);
  j["C_moser"] = b.C_moser ? ordered_json(*b.C_moser) : ordered_json(nullptr);
  j["C_lower"] = b.C_lower ? ordered_json(*b.C_lower) : ordered_json(nullptr);
  j["C_upper"] = b.C_upper;
  j["two_sided"] = b.two_sided;
  const fs::path out = fs::path(out_dir) / "constants.json";
  write_atomic(out, j.dump(2) + "\n");
  std::cout << j.dump() << "\n";
  return kExitOk;
}

int run_smooth(const std::string& shape_file, int n, int samples, const std::string& out_dir) {
  const cheeger::ShapeSpec shape = cheeger::load_shape_file(shape_file);
  const cheeger::ConvexPolygon poly = cheeger::polygonize(shape, 256);
  const cheeger::SmoothedBoundary sm = cheeger::smooth(poly, n, samples);

  ordered_json j;
  j["shape"] = cheeger::shape_summary(shape);
  j["n"] = sm.n;
  j["lipschitz"] = sm.lipschitz;
  j["center"] = {sm.center.x, sm.center.y};
  j["sandwich_holds"] = sm.sandwich_holds();
  j["perimeter_polygon"] = cheeger::perimeter(poly);
  j["perimeter_smooth"] = sm.perimeter();
  ordered_json pts = ordered_json::array();
  const auto poly_pts = sm.polyline();
  for (const cheeger::Point& p : poly_pts) pts.push_back({p.x, p.y});
  j["boundary"] = std::move(pts);
  const fs::path out = fs::path(out_dir) / "smooth.json";
  write_atomic(out, j.dump(2) + "\n");
  std::cout << "smooth n=" << n << " sandwich=" << (sm.sandwich_holds() ? "holds" : "VIOLATED")
            << " perimeter=" << sm.perimeter() << "  -> " << out.string() << "\n";
  return kExitOk;
}

int run_demo_elongation(const std::string& family, double q, const std::string& sizes_csv,
                        const std::string& out_dir, const std::string& format) {
  const cheeger::Exponent e = cheeger::Exponent::make(2, q);
  cheeger::ElongationFamily fam;
  if (family == "stadium")
    fam = cheeger::ElongationFamily::stadium;
  else if (family == "ellipse")
    fam = cheeger::ElongationFamily::ellipse;
  else if (family == "rectangle")
    fam = cheeger::ElongationFamily::rectangle;
  else
    throw CLI::ValidationError("--family", "unknown family: " + family);

  const std::vector<double> sizes = parse_list(sizes_csv);
  const cheeger::ElongationResult res = cheeger::elongation_demo(fam, e, sizes);

  if (format == "csv") {
    std::ostringstream csv;
    csv << "size,q,perimeter,area,ratio\n";
    csv.precision(15);
    for (const auto& p : res.points)
      csv << p.size << "," << q << "," << p.perimeter << "," << p.area << "," << p.ratio << "\n";
    const fs::path out = fs::path(out_dir) / "elongation.csv";
    write_atomic(out, csv.str());
    std::cout << "elongation " << family << " q=" << q << " slope=" << res.slope << "  -> "
              << out.string() << "\n";
  } else {
    ordered_json j;
    j["family"] = family;
    j["q"] = q;
    j["slope"] = res.slope;
    ordered_json pts = ordered_json::array();
    for (const auto& p : res.points)
      pts.push_back({{"size", p.size}, {"perimeter", p.perimeter}, {"area", p.area},
                     {"ratio", p.ratio}});
    j["points"] = std::move(pts);
    const fs::path out = fs::path(out_dir) / "elongation.json";
    write_atomic(out, j.dump(2) + "\n");
    std::cout << "elongation " << family << " q=" << q << " slope=" << res.slope << "  -> "
              << out.string() << "\n";
  }
  return kExitOk;
}

int run_demo_nonexistence(double q, int steps, double halfwidth, const std::string& out_dir) {
  const cheeger::Exponent e = cheeger::Exponent::make(2, q);
  const auto walk = cheeger::nonexistence_demo(cheeger::EpigraphSpec{halfwidth, "log"}, e, steps);
  std::ostringstream csv;
  csv << "step,shift,scale,ratio\n";
  csv.precision(15);
  for (std::size_t i = 0; i < walk.size(); ++i)
    csv << i << "," << walk[i].shift << "," << walk[i].scale << "," << walk[i].ratio << "\n";
  const fs::path out = fs::path(out_dir) / "nonexistence.csv";
  write_atomic(out, csv.str());
  std::cout << "nonexistence walk: " << walk.size() << " steps, ratio " << walk.front().ratio
            << " -> " << walk.back().ratio << "  -> " << out.string() << "\n";
  return kExitOk;
}

int run_verify(std::uint64_t seed, const std::string& qs_csv, const std::string& out_dir) {
  const std::vector<double> qs = qs_csv.empty() ? cheeger::default_qs() : parse_list(qs_csv);
  const auto corpus = cheeger::default_corpus(seed);
  const cheeger::Report rep = cheeger::run_suite(corpus, qs, seed);
  cheeger::write_report_files(rep, out_dir);
  std::cout << "verify: " << rep.passed_count << " passed, " << rep.failed_count << " failed  -> "
            << (fs::path(out_dir) / "report.json").string() << "\n";
  return rep.failed_count == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Cheeger constants of planar sets: closed forms, shape optimization, "
               "and the verification suite"};
  app.require_subcommand(1);

  ComputeArgs ca;
  CLI::App* compute = app.add_subcommand("compute", "estimate h_q for a convex shape file");
  compute->add_option("--shape", ca.shape_file, "shape JSON file")->required();
  compute->add_option("--q", ca.q, "volume exponent")->required();
  compute->add_option("--out", ca.out_dir, "output directory");
  compute->add_option("--seed", ca.seed, "rng seed for multistarts");
  compute->add_option("--vertices", ca.vertices, "candidate polygon vertices")
      ->check(CLI::Range(8, 4096));
  compute->add_option("--multistarts", ca.multistarts, "number of optimizer starts");
  compute->add_option("--max-iters", ca.max_iters, "objective evaluations per start");
  compute->add_option("--resolution", ca.resolution, "domain polygonization resolution");

  ComputeArgs ua;
  CLI::App* union_cmd = app.add_subcommand("union", "estimate h_q for a disjoint union file");
  union_cmd->add_option("--shape", ua.shape_file, "shape JSON file (kind union)")->required();
  union_cmd->add_option("--q", ua.q, "volume exponent")->required();
  union_cmd->add_option("--out", ua.out_dir, "output directory");
  union_cmd->add_option("--seed", ua.seed, "rng seed");

  int cn = 2;
  double cq = 1.5;
  std::string c_out = default_out_dir();
  CLI::App* constants_cmd =
      app.add_subcommand("constants", "print the explicit constant bundle as JSON");
  constants_cmd->add_option("--N", cn, "dimension")->required();
  constants_cmd->add_option("--q", cq, "volume exponent")->required();
  constants_cmd->add_option("--out", c_out, "output directory");

  std::string s_shape;
  int s_n = 20, s_samples = 720;
  std::string s_out = default_out_dir();
  CLI::App* smooth_cmd = app.add_subcommand("smooth", "mollified boundary of a convex shape");
  smooth_cmd->add_option("--shape", s_shape, "shape JSON file")->required();
  smooth_cmd->add_option("--n", s_n, "mollification index")->required();
  smooth_cmd->add_option("--samples", s_samples, "angular samples");
  smooth_cmd->add_option("--out", s_out, "output directory");

  CLI::App* demo = app.add_subcommand("demo", "closed-form demonstrations");
  demo->require_subcommand(1);
  std::string d_family = "stadium", d_sizes = "100,1000,10000", d_out = default_out_dir();
  std::string d_format = "csv";
  double d_q = 0.5;
  CLI::App* elong = demo->add_subcommand("elongation", "ratio decay/growth under elongation");
  elong->add_option("--family", d_family, "stadium | ellipse | rectangle");
  elong->add_option("--q", d_q, "volume exponent")->required();
  elong->add_option("--sizes", d_sizes, "comma-separated sizes");
  elong->add_option("--out", d_out, "output directory");
  elong->add_option("--format", d_format, "csv | json");

  double n_q = 1.5, n_halfwidth = 1.0;
  int n_steps = 10;
  std::string n_out = default_out_dir();
  CLI::App* nonex = demo->add_subcommand("nonexistence", "translate-and-inflate walk");
  nonex->add_option("--q", n_q, "volume exponent in (1, 2)")->required();
  nonex->add_option("--steps", n_steps, "number of steps");
  nonex->add_option("--halfwidth", n_halfwidth, "epigraph half-width");
  nonex->add_option("--out", n_out, "output directory");

  std::uint64_t v_seed = 0;
  std::string v_qs, v_out = default_out_dir();
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the property suite and write reports");
  verify_cmd->add_option("--seed", v_seed, "suite seed");
  verify_cmd->add_option("--qs", v_qs, "comma-separated exponents (default suite)");
  verify_cmd->add_option("--out", v_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgs;
  }

  try {
    if (compute->parsed()) return run_compute(ca, false);
    if (union_cmd->parsed()) return run_compute(ua, true);
    if (constants_cmd->parsed()) return run_constants(cn, cq, c_out);
    if (smooth_cmd->parsed()) return run_smooth(s_shape, s_n, s_samples, s_out);
    if (demo->parsed()) {
      if (elong->parsed()) return run_demo_elongation(d_family, d_q, d_sizes, d_out, d_format);
      if (nonex->parsed()) return run_demo_nonexistence(n_q, n_steps, n_halfwidth, n_out);
    }
    if (verify_cmd->parsed()) return run_verify(v_seed, v_qs, v_out);
  } catch (const cheeger::InvalidExponentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgs;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgs;
  } catch (const cheeger::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitShapeFile;
  } catch (const cheeger::DegenerateShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitShapeFile;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitArgs;
}
