#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "models.hpp"
#include "polykernel/mesh_io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = POLYKERNEL_CLI;
const std::string kFixtures = POLYKERNEL_FIXTURES;

struct Run {
  int code = -1;
  std::string out;
};

std::string fixture(const char* name) { return kFixtures + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polykernel_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch("stdout.txt");
  const std::string cmd = "'" + kCli + "' " + args + " > '" + out.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t iterations_of(const std::string& out) {
  const auto pos = out.find("iterations: ");
  REQUIRE(pos != std::string::npos);
  return std::stoul(out.substr(pos + 12));
}

}  // namespace

TEST_CASE("kernel command") {
  const fs::path out = scratch("cube_kernel.off");
  Run r = run("kernel " + fixture("cube.off") + " --output " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("status: NON_EMPTY") != std::string::npos);
  CHECK(r.out.find("volume: 1\n") != std::string::npos);
  const polykernel::Polyhedron k = polykernel::read_off_file(out.string());
  CHECK(k.verts.size() == 8);
  CHECK(polykernel::signed_volume(k) == doctest::Approx(1.0));

  r = run("kernel " + fixture("ring.off"));
  CHECK(r.code == 2);
  CHECK(r.out.find("EMPTY") != std::string::npos);

  r = run("kernel " + fixture("lprism.off") + " --shuffle --seed 5 --tolerance 1e-9");
  CHECK(r.code == 0);

  CHECK(run("kernel /nonexistent/model.off").code == 1);
  CHECK(run("kernel " + fixture("cube.off") + " --tolerance -1").code == 1);
  CHECK(run("kernel").code != 0);
  CHECK(run("no-such-command").code != 0);
}

TEST_CASE("batch command") {
  const fs::path report = scratch("tets.csv");
  Run r = run("batch " + fixture("tetrahedra.coll") + " --report " + report.string());
  CHECK(r.code == 0);
  auto rows = csv_rows(report);
  REQUIRE(rows.size() == 101);
  CHECK(slurp(report).substr(0, slurp(report).find('\n')) ==
        "id,n_verts,n_faces,status,kernel_volume,iterations,wall_time_s");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][3] == "NON_EMPTY");

  r = run("batch " + fixture("mixed.coll") + " --report " + report.string() + " --threads 2");
  CHECK(r.code == 0);
  rows = csv_rows(report);
  REQUIRE(rows.size() == 5);
  CHECK(rows[1][3] == "NON_EMPTY");
  CHECK(rows[2][0] == "ring");
  CHECK(rows[2][3] == "EMPTY");
  CHECK(rows[3][3] == "NON_EMPTY");
  CHECK(rows[4][3] == "NON_EMPTY");

  CHECK(run("batch /nonexistent.coll --report " + report.string()).code == 1);
  CHECK(run("batch " + fixture("mixed.coll") + " --report /nonexistent/dir/r.csv").code == 1);
}

TEST_CASE("batch reports are reproducible") {
  const fs::path a = scratch("seed1.csv"), b = scratch("seed2.csv");
  CHECK(run("batch " + fixture("small_suite.coll") + " --shuffle --seed 1 --report " + a.string()).code == 0);
  CHECK(run("batch " + fixture("small_suite.coll") + " --shuffle --seed 2 --report " + b.string()).code == 0);
  const auto ra = csv_rows(a), rb = csv_rows(b);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 1; i < ra.size(); ++i) {
    CHECK(ra[i][3] == rb[i][3]);
    const double va = std::stod(ra[i][4]), vb = std::stod(rb[i][4]);
    CHECK(std::abs(va - vb) <= 1e-9 * std::max(1.0, va));
  }

  // Without shuffle everything but the timing column is byte-identical.
  auto strip_time = [](const fs::path& p) {
    std::string out;
    std::istringstream in(slurp(p));
    for (std::string line; std::getline(in, line);) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
  };
  CHECK(run("batch " + fixture("small_suite.coll") + " --report " + a.string()).code == 0);
  CHECK(run("batch " + fixture("small_suite.coll") + " --report " + b.string()).code == 0);
  CHECK(strip_time(a) == strip_time(b));
}

TEST_CASE("check-star command") {
  Run r = run("check-star " + fixture("tent_low.off"));
  CHECK(r.code == 0);
  CHECK(r.out.find("STAR-SHAPED") == 0);

  r = run("check-star " + fixture("tent_high.off"));
  CHECK(r.code == 2);
  CHECK(r.out.find("NOT STAR-SHAPED") == 0);

  r = run("check-star " + fixture("convex_hull.off"));
  CHECK(r.code == 0);

  r = run("check-star " + fixture("torus_10k.off") + " --seed 0");
  CHECK(r.code == 2);
  CHECK(r.out.find("NOT STAR-SHAPED") == 0);
  MESSAGE("torus iterations with seed 0: " << iterations_of(r.out));
  CHECK(iterations_of(r.out) <= 50);
}

TEST_CASE("verify command") {
  Run r = run("verify " + fixture("small_suite.coll"));
  CHECK(r.code == 0);
  CHECK(r.out.find("MISMATCH") == std::string::npos);

  r = run("verify " + fixture("cube.coll"));
  CHECK(r.code == 0);
  // id,kernel,oracle,hausdorff,volume_rel_diff,result
  const auto line_start = r.out.find("\ncube,");
  REQUIRE(line_start != std::string::npos);
  std::stringstream ls(r.out.substr(line_start + 1));
  std::vector<std::string> cells;
  for (std::string c; std::getline(ls, c, ',') && cells.size() < 6;) cells.push_back(c);
  CHECK(std::stod(cells[3]) <= 1e-12);
  CHECK(std::stod(cells[4]) <= 1e-12);

  r = run("verify " + fixture("too_many_planes.coll"));
  CHECK(r.code == 1);
  CHECK(r.out.find("torus60,,,,,TooManyPlanes") != std::string::npos);
}

TEST_CASE("bench command") {
  const fs::path report = scratch("bench.csv");
  Run r = run("bench " + fixture("mixed.coll") + " " + fixture("tetrahedra.coll") + " --repeats 3 --report " +
              report.string());
  CHECK(r.code == 0);
  auto rows = csv_rows(report);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"dataset", "n_elements", "repeats", "min_wall_time_s"});
  CHECK(rows[1][1] == "4");
  CHECK(rows[1][2] == "3");
  CHECK(rows[2][1] == "100");
  CHECK(std::stod(rows[2][3]) >= 0.0);

  r = run("bench " + fixture("mixed.coll") + " --sizes 10,20 --report " + report.string());
  CHECK(r.code == 0);
  rows = csv_rows(report);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][1] == "10");
  CHECK(rows[2][1] == "20");

  r = run("bench " + fixture("empty.coll") + " --report " + report.string());
  CHECK(r.code == 0);
  CHECK(csv_rows(report).size() == 1);
}
