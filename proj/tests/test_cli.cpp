#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "scatter/config.hpp"
#include "scatter/errors.hpp"
#include "scatter/run.hpp"

using namespace scatter;
using namespace scatter::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("scatter_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> csv_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv") out[e.path().filename().string()] = slurp(e.path());
  return out;
}

fs::path scratch_path(const std::string& name) {
  return fs::temp_directory_path() / ("scatter_cli_test_" + name);
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text).validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

const char* kSmall = R"(
[potential]
type = yukawa
g = 0.5
mu = 1
[kinematics]
k = 2, 4
[theta]
max = 0.5
count = 9
[sources]
list = eikonal, born1, partial_wave
[output]
total_points = 257
)";

}  // namespace

TEST_CASE("minimal config keeps defaults") {
  const auto c = parse_config("[potential]\ntype = gauss\ng = 0.1\n");
  c.validate();
  CHECK(c.potential.kind == PotentialSpec::Kind::gauss);
  CHECK(c.potential.alpha == 1.0);
  CHECK(!c.partial_wave.l_max.has_value());
  const auto t = c.theta.values();
  REQUIRE(t.size() == 64);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 1.0);
  CHECK(t[1] == doctest::Approx(1.0 / 63).epsilon(1e-15));
}

TEST_CASE("log theta grid") {
  const auto c = parse_config("[theta]\nmin = 1e-3\nmax = 1e-1\ncount = 3\nspacing = log\n");
  const auto t = c.theta.values();
  REQUIRE(t.size() == 3);
  CHECK(t[1] == doctest::Approx(1e-2).epsilon(1e-14));
  CHECK(error_of("[theta]\nmin = 0\nspacing = log\n").find("theta") != std::string::npos);
}

TEST_CASE("invalid configs are rejected with the offending field") {
  CHECK(error_of("[theta]\nmax = 3.2\n").find("theta.max") != std::string::npos);
  CHECK(error_of("[sources]\nlist =\n") != "");
  CHECK(error_of("[sources]\nlist = ,\n") != "");
  CHECK(error_of("[theta]\nmaxx = 1\n").find("maxx") != std::string::npos);
  CHECK(error_of("[thetas]\nmax = 1\n").find("thetas") != std::string::npos);
  CHECK(error_of("max = 1\n") != "");
  CHECK(error_of("[theta]\nmax = 1\nmax = 0.5\n").find("max") != std::string::npos);
  CHECK(error_of("[kinematics]\nk = -1\n").find("k") != std::string::npos);
  CHECK(error_of("[kinematics]\nmass = abc\n").find("mass") != std::string::npos);
  CHECK(error_of("[sources]\nlist = eikonal, exact\n").find("exact") != std::string::npos);
  CHECK(error_of("[potential]\ntype = coulomb\n").find("coulomb") != std::string::npos);
}

TEST_CASE("canonical text round-trips") {
  auto c = parse_config(kSmall);
  c.partial_wave.l_max = 40;
  c.quadrature.rel_tol = 3e-9;
  const std::string text = to_text(c);
  const auto back = parse_config(text);
  CHECK(to_text(back) == text);
  CHECK(back.k == c.k);
  CHECK(back.partial_wave.l_max == 40);
  CHECK(back.quadrature.rel_tol == 3e-9);
  CHECK(back.sources == c.sources);
}

TEST_CASE("csv number format") {
  CHECK(format_csv(0.0) == format_csv(-0.0));
  CHECK(std::stod(format_csv(0.1)) == 0.1);
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("zero potential gives zero rows and totals") {
  auto c = parse_config("[potential]\ntype = gauss\ng = 0\n[theta]\ncount = 5\n[output]\ntotal_points = 65\n");
  c.output_directory = scratch("zero");
  const auto m = run_scan(c);
  CHECK(m.exit_code() == 0);
  for (const auto& o : m.outcomes) {
    REQUIRE(o.ok);
    for (const auto& r : o.table.rows) CHECK(r.dsigma_domega == 0.0);
    REQUIRE(o.table.total_integrated.has_value());
    CHECK(*o.table.total_integrated == 0.0);
  }
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  auto c = parse_config(kSmall);
  c.output_directory = scratch("det_a");
  run_scan(c);
  c.output_directory = scratch("det_b");
  run_scan(c);
  c.threads = 4;
  c.output_directory = scratch("det_c");
  run_scan(c);
  const auto a = csv_files(scratch_path("det_a"));
  CHECK(a.size() == 7);  // 3 sources x 2 k + summary
  CHECK(a == csv_files(scratch_path("det_b")));
  CHECK(a == csv_files(scratch_path("det_c")));
}

TEST_CASE("manifest lists every file once") {
  auto c = parse_config(kSmall);
  c.emit_plot_script = true;
  c.output_directory = scratch("manifest");
  const auto m = run_scan(c);
  CHECK(m.exit_code() == 0);
  std::size_t on_disk = 0;
  for (const auto& e : fs::directory_iterator(c.output_directory)) {
    const auto name = e.path().filename().string();
    if (name == "manifest.txt") continue;
    ++on_disk;
    CHECK(std::count(m.files.begin(), m.files.end(), name) == 1);
  }
  CHECK(on_disk == m.files.size());
  const std::string text = slurp(c.output_directory / "manifest.txt");
  CHECK(text.find("version = " + std::string(version())) != std::string::npos);
  CHECK(text.find("[config]") != std::string::npos);
  CHECK(text.find("yukawa_differential_standard_sign = CONSISTENT") != std::string::npos);
}

TEST_CASE("exit codes follow source outcomes") {
  const fs::path dir = scratch("exit");
  {
    std::ofstream t(dir / "well.dat");
    t << "# r V\n0 -1\n0.5 -1\n1 -0.5\n1.5 0\n3 0\n";
  }
  auto c = parse_config("[potential]\ntype = tabulated\nfile = well.dat\n[theta]\ncount = 5\n"
                        "[sources]\nlist = born1, paper_closed\n[output]\ntotal_points = 65\n",
                        dir);
  c.output_directory = dir / "partial";
  auto m = run_scan(c);
  CHECK(m.exit_code() == 2);
  REQUIRE(m.outcomes.size() == 2);
  CHECK(m.outcomes[0].ok);
  CHECK(!m.outcomes[1].ok);
  CHECK(slurp(c.output_directory / "manifest.txt").find("paper_closed") != std::string::npos);

  c.sources = {Source::paper_closed};
  c.output_directory = dir / "none";
  CHECK(run_scan(c).exit_code() == 1);

  c.potential.file = dir / "missing.dat";
  c.sources = {Source::born1};
  c.output_directory = dir / "missing";
  CHECK(run_scan(c).exit_code() == 1);
}
