// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tdg/commands.hpp"
#include "tdg/output.hpp"

using namespace tdg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("the manufactured study writes error and order tables") {
  const RunConfig cfg = RunConfig::parse_text(
      "[run]\nexperiment = manufactured\n"
      "[manufactured]\nspatial_h = 0.25, 0.125\ntemporal_dt = 0.125, 0.0625\n"
      "temporal_elements = 32\n");
  const fs::path dir = fresh_dir("tdg_test_manufactured");
  REQUIRE(cmd_manufactured(cfg, dir.string()) == 0);

  const std::string errors = slurp(dir / "errors.csv");
  CHECK(errors.find("# config_hash=") == 0);
  CHECK(errors.find("h,scheme,h1_error,l2_error") != std::string::npos);
  // 2 ladder points x 2 schemes plus 2 header lines
  CHECK(count_lines(errors) == 2 + 4);

  const std::string temporal = slurp(dir / "errors_temporal.csv");
  CHECK(count_lines(temporal) == 2 + 4);
  const std::string orders = slurp(dir / "orders.csv");
  CHECK(orders.find("spatial,monolithic,l2") != std::string::npos);
  CHECK(orders.find("temporal,lie_trotter,midpoint_l2") != std::string::npos);

  SUBCASE("no snapshots are written for an empty snapshot list") {
    int snapshots = 0;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().filename().string().rfind("snapshot", 0) == 0) ++snapshots;
    CHECK(snapshots == 0);
  }
}

TEST_CASE("repeated ladder runs are byte-identical") {
  const RunConfig cfg = RunConfig::parse_text(
      "[run]\nexperiment = convergence\n"
      "[manufactured]\nspatial_h = 0.25, 0.125\ntemporal_dt = 0.125\ntemporal_elements = 16\n");
  const fs::path d1 = fresh_dir("tdg_test_rerun_a");
  const fs::path d2 = fresh_dir("tdg_test_rerun_b");
  REQUIRE(cmd_convergence(cfg, d1.string()) == 0);
  REQUIRE(cmd_convergence(cfg, d2.string()) == 0);
  for (const char* name : {"errors.csv", "errors_temporal.csv", "orders.csv"})
    CHECK(slurp(d1 / name) == slurp(d2 / name));
}

TEST_CASE("a zero-amplitude pulse run stays identically zero") {
  const RunConfig cfg = RunConfig::parse_text(
      "[run]\nexperiment = laser\n"
      "[laser]\namplitude = 0\nh = 0.05\nt_end = 0.2\n");
  const fs::path dir = fresh_dir("tdg_test_laser_zero");
  REQUIRE(cmd_laser(cfg, dir.string()) == 0);
  const std::string field = slurp(dir / "field.csv");
  std::istringstream is(field);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);  // headers
  while (std::getline(is, line)) {
    const size_t last = line.rfind(',');
    CHECK(line.substr(last + 1) == "0");
  }
}

TEST_CASE("a short pulsed run writes fields, energies and front tracks") {
  const RunConfig cfg = RunConfig::parse_text(
      "[run]\nexperiment = laser\n"
      "[laser]\nh = 0.02\nt_end = 0.3\n"
      "[output]\nsnapshot_times = 0.1\nfield_stride = 2\n");
  const fs::path dir = fresh_dir("tdg_test_laser_short");
  REQUIRE(cmd_laser(cfg, dir.string()) == 0);
  CHECK(fs::exists(dir / "energy.csv"));
  CHECK(fs::exists(dir / "fronts.csv"));
  CHECK(fs::exists(dir / "front_summary.csv"));
  CHECK(fs::exists(dir / "snapshot_t0.1.csv"));
  const std::string energy = slurp(dir / "energy.csv");
  CHECK(energy.find("t,h1_energy,l2_norm,mech_energy,jump_dissipation") != std::string::npos);
  CHECK(count_lines(energy) == 2 + 15 + 1);  // header + N slabs + initial row
}

TEST_CASE("the plate run writes grid files and a symmetry report") {
  const RunConfig cfg = RunConfig::parse_text(
      "[run]\nexperiment = pulse2d\n"
      "[pulse2d]\ngrid = 8\ndt = 0.01\nt_end = 0.02\n"
      "[output]\nsnapshot_times = 0.0, 0.02\n");
  const fs::path dir = fresh_dir("tdg_test_pulse2d");
  REQUIRE(cmd_pulse2d(cfg, dir.string()) == 0);
  const std::string vtk = slurp(dir / "theta_t0.vtk");
  CHECK(vtk.find("DATASET STRUCTURED_GRID") != std::string::npos);
  CHECK(vtk.find("DIMENSIONS 9 9 1") != std::string::npos);
  CHECK(vtk.find("POINT_DATA 81") != std::string::npos);
  CHECK(vtk.find("SCALARS theta double 1") != std::string::npos);
  CHECK(fs::exists(dir / "theta_t0.02.csv"));
  const std::string sym = slurp(dir / "symmetry.csv");
  CHECK(count_lines(sym) == 2 + 2);
  // symmetric data on a symmetric grid stays symmetric to solver accuracy
  std::istringstream is(sym);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  while (std::getline(is, line)) {
    const double defect = std::stod(line.substr(line.find(',') + 1));
    CHECK(defect <= 1e-8);
  }
}

TEST_CASE("front extraction finds the two speeds of a synthetic wave pair") {
  // two gaussian bumps moving right at speeds 1 and 3, the fast one smaller
  const Mesh mesh = Mesh::interval(1.0, 400);
  Trajectory traj;
  for (int i = 0; i <= 60; ++i) {
    const double t = 0.005 * i;
    StateVector s = StateVector::zeros(mesh, t);
    for (int n = 0; n < mesh.n_nodes(); ++n) {
      const double x = mesh.coord(n, 0);
      const double slow = std::exp(-std::pow((x - 1.0 * t) / 0.02, 2));
      const double fast = 0.4 * std::exp(-std::pow((x - 3.0 * t) / 0.02, 2));
      s.theta[n] = slow + fast;
    }
    traj.traces.push_back(s);
  }
  const FrontSeries f = extract_fronts(traj, mesh, 0.1, 0.05, 0.25, 0.3);
  CHECK(f.slow_speed == doctest::Approx(1.0).epsilon(0.15));
  CHECK(f.fast_speed == doctest::Approx(3.0).epsilon(0.15));
}

TEST_CASE("rotation defect measures asymmetry") {
  const Mesh mesh = Mesh::quad(-1, 1, -1, 1, 4, 4);
  std::vector<double> radial(mesh.n_nodes());
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    const double x = mesh.coord(n, 0), y = mesh.coord(n, 1);
    radial[n] = std::exp(-(x * x + y * y));
  }
  CHECK(rotation_defect(mesh, radial) <= 1e-15);
  radial[0] += 0.5;  // breaks the symmetry at one corner
  CHECK(rotation_defect(mesh, radial) > 0.1);
}
