#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* env = std::getenv("CHEEGER_CLI");
  REQUIRE_MESSAGE(env != nullptr, "CHEEGER_CLI must point at the built binary");
  return env;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("cheeger_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: compute on a disk reproduces the ball value") {
  TempDir tmp;
  write_file(tmp.path / "disk.json", R"({"kind":"disk","center":[0,0],"radius":1})");
  const int rc = run("compute --shape " + (tmp.path / "disk.json").string() + " --q 1.5 --out " +
                     tmp.path.string());
  CHECK(rc == 0);
  const json est = read_json(tmp.path / "estimate.json");
  CHECK(est["value"].get<double>() == doctest::Approx(2.929180).epsilon(1e-6));
  CHECK(est["method"] == "analytic");
  CHECK(est["converged"] == true);
}

TEST_CASE("cli: compute is idempotent byte-for-byte") {
  TempDir tmp;
  write_file(tmp.path / "disk.json", R"({"kind":"disk","radius":2})");
  const std::string cmd = "compute --shape " + (tmp.path / "disk.json").string() +
                          " --q 0.5 --seed 42 --out " + tmp.path.string();
  CHECK(run(cmd) == 0);
  const std::string first = slurp(tmp.path / "estimate.json");
  CHECK(run(cmd) == 0);
  CHECK(slurp(tmp.path / "estimate.json") == first);
}

TEST_CASE("cli: exit 2 on argument errors, with the exponent rationale") {
  TempDir tmp;
  write_file(tmp.path / "disk.json", R"({"kind":"disk","radius":1})");
  CHECK(run("compute --shape " + (tmp.path / "disk.json").string() + " --q 2.0 --out " +
            tmp.path.string()) == 2);
  CHECK(run("compute --nonsense") == 2);
  CHECK(run("") == 2);
  // the rejection message explains the validity window
  const std::string cmd = cli_path() + " compute --shape " + (tmp.path / "disk.json").string() +
                          " --q 2.0 2> " + (tmp.path / "err.txt").string();
  std::system(cmd.c_str());
  const std::string err = slurp(tmp.path / "err.txt");
  CHECK(err.find("N/(N-1)") != std::string::npos);
  CHECK(err.find("isoperimetric") != std::string::npos);
}

TEST_CASE("cli: exit 3 on shape-file problems") {
  TempDir tmp;
  CHECK(run("compute --shape " + (tmp.path / "missing.json").string() + " --q 1.5") == 3);
  write_file(tmp.path / "broken.json", "{not json");
  CHECK(run("compute --shape " + (tmp.path / "broken.json").string() + " --q 1.5") == 3);
  write_file(tmp.path / "bad.json", R"({"kind":"sphere","radius":1})");
  CHECK(run("compute --shape " + (tmp.path / "bad.json").string() + " --q 1.5") == 3);
}

TEST_CASE("cli: exit 4 on a starved, unconverged solve still writes the result") {
  TempDir tmp;
  write_file(tmp.path / "sq.json",
             R"({"kind":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
  const int rc = run("compute --shape " + (tmp.path / "sq.json").string() +
                     " --q 1.5 --max-iters 900 --multistarts 2 --out " + tmp.path.string());
  CHECK(rc == 4);
  const json est = read_json(tmp.path / "estimate.json");
  CHECK(est["converged"] == false);
  CHECK(est["value"].get<double>() > 0.0);
}

TEST_CASE("cli: union command") {
  TempDir tmp;
  write_file(tmp.path / "u.json", R"({"kind":"union","members":[
    {"kind":"disk","center":[0,0],"radius":0.1},
    {"kind":"disk","center":[3,0],"radius":1.0}],"disjoint":true})");
  const int rc = run("union --shape " + (tmp.path / "u.json").string() + " --q 0.5 --out " +
                     tmp.path.string());
  CHECK(rc == 0);
  const json est = read_json(tmp.path / "estimate.json");
  CHECK(est["value"].get<double>() == doctest::Approx(2.0 / 3.14159265358979).epsilon(1e-6));
}

TEST_CASE("cli: constants bundle") {
  TempDir tmp;
  CHECK(run("constants --N 2 --q 1.5 --out " + tmp.path.string()) == 0);
  const json b = read_json(tmp.path / "constants.json");
  CHECK(b["C_lower"].get<double>() == doctest::Approx(2.324).epsilon(1e-3));
  CHECK(b["C_upper"].get<double>() == doctest::Approx(225.55).epsilon(1e-3));
  CHECK(b["A"].get<double>() == 1.0);
  CHECK(run("constants --N 2 --q 3.0 --out " + tmp.path.string()) == 2);
}

TEST_CASE("cli: elongation demo emits the pinned CSV schema") {
  TempDir tmp;
  const int rc = run("demo elongation --family stadium --q 0.5 --sizes 100,1000,10000 --out " +
                     tmp.path.string());
  CHECK(rc == 0);
  std::ifstream csv(tmp.path / "elongation.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "size,q,perimeter,area,ratio");
  double lx[3], ly[3];
  for (int i = 0; i < 3; ++i) {
    std::string line;
    REQUIRE(std::getline(csv, line));
    std::stringstream ss(line);
    std::string tok;
    double cols[5];
    for (double& c : cols) {
      std::getline(ss, tok, ',');
      c = std::stod(tok);
    }
    CHECK(cols[1] == 0.5);
    CHECK(cols[4] == doctest::Approx(cols[2] / std::pow(cols[3], 2.0)).epsilon(1e-9));
    lx[i] = std::log(cols[0]);
    ly[i] = std::log(cols[4]);
  }
  const double slope =
      (3 * (lx[0] * ly[0] + lx[1] * ly[1] + lx[2] * ly[2]) - (lx[0] + lx[1] + lx[2]) * (ly[0] + ly[1] + ly[2])) /
      (3 * (lx[0] * lx[0] + lx[1] * lx[1] + lx[2] * lx[2]) - (lx[0] + lx[1] + lx[2]) * (lx[0] + lx[1] + lx[2]));
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("cli: elongation demo in json format") {
  TempDir tmp;
  const int rc = run("demo elongation --family ellipse --q 0.5 --sizes 100,1000 --format json --out " +
                     tmp.path.string());
  CHECK(rc == 0);
  const json j = read_json(tmp.path / "elongation.json");
  CHECK(j["family"] == "ellipse");
  CHECK(j["points"].size() == 2);
  CHECK(j["slope"].get<double>() < -0.9);
}

TEST_CASE("cli: vertex count below the minimum is an argument error") {
  TempDir tmp;
  write_file(tmp.path / "disk.json", R"({"kind":"disk","radius":1})");
  CHECK(run("compute --shape " + (tmp.path / "disk.json").string() +
            " --q 1.5 --vertices 4") == 2);
}

TEST_CASE("cli: nonexistence demo emits decreasing ratios") {
  TempDir tmp;
  CHECK(run("demo nonexistence --q 1.5 --steps 10 --out " + tmp.path.string()) == 0);
  std::ifstream csv(tmp.path / "nonexistence.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "step,shift,scale,ratio");
  double prev = 1e300;
  int rows = 0;
  std::string line;
  while (std::getline(csv, line)) {
    const double ratio = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(ratio < prev);
    prev = ratio;
    ++rows;
  }
  CHECK(rows == 10);
}

TEST_CASE("cli: smoothing demo certifies the sandwich") {
  TempDir tmp;
  write_file(tmp.path / "sq.json",
             R"({"kind":"polygon","vertices":[[-0.5,-0.5],[0.5,-0.5],[0.5,0.5],[-0.5,0.5]]})");
  const int rc = run("smooth --shape " + (tmp.path / "sq.json").string() +
                     " --n 20 --samples 360 --out " + tmp.path.string());
  CHECK(rc == 0);
  const json sm = read_json(tmp.path / "smooth.json");
  CHECK(sm["sandwich_holds"] == true);
  CHECK(sm["lipschitz"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sm["boundary"].size() == 360);
}

TEST_CASE("cli: verify writes report artifacts and passes") {
  TempDir tmp;
  const int rc = run("verify --qs 1.5 --seed 3 --out " + tmp.path.string());
  CHECK(rc == 0);
  const json rep = read_json(tmp.path / "report.json");
  CHECK(rep["failed"].get<int>() == 0);
  CHECK(rep["passed"].get<int>() > 20);
  CHECK(fs::exists(tmp.path / "report.md"));
  CHECK(fs::exists(tmp.path / "sandwich.svg"));
  CHECK(fs::exists(tmp.path / "elongation.svg"));
}

TEST_CASE("cli: out dir honors CHEEGER_OUT_DIR") {
  TempDir tmp;
  write_file(tmp.path / "disk.json", R"({"kind":"disk","radius":1})");
  const std::string cmd = "CHEEGER_OUT_DIR=" + tmp.path.string() + " " + cli_path() +
                          " constants --N 2 --q 1.2 > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(tmp.path / "constants.json"));
}
