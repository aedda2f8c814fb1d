#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "metasim/config.hpp"
#include "metasim/csv.hpp"

using namespace metasim;
namespace fs = std::filesystem;

namespace {

const char* kCli = METASIM_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           fs::path("metasim_cli_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int counter;
};
int TempDir::counter = 0;

int run(const std::string& args) {
  const std::string cmd =
      std::string(kCli) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status < 0 ? status : WEXITSTATUS(status);
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string slurp(const fs::path& p) { return read_file(p.string()); }

}  // namespace

TEST_CASE("default config text parses strictly to the documented defaults") {
  const RunConfig cfg = parse_config(default_config_text(), true);
  CHECK(cfg.scenario.spec.loops.size() == 2);
  CHECK(cfg.params.h == doctest::Approx(5.0));
  CHECK(cfg.params.tau_mech == doctest::Approx(71.5918993));
  CHECK(cfg.gripper.base_separation_mm == doctest::Approx(40.0));
}

TEST_CASE("unknown keys fail strictly with a line number, pass lax") {
  const std::string text = "[thermal]\nh = 10\nbogus_key = 1\n";
  CHECK_THROWS_AS(parse_config(text, true), ConfigError);
  try {
    parse_config(text, true);
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_NOTHROW(parse_config(text, false));
}

TEST_CASE("config values are range-checked") {
  CHECK_THROWS_AS(parse_config("[thermal]\nh = -1\n", true), ConfigError);
  CHECK_THROWS_AS(parse_config("[thermal]\ndt = 0\n", true), ConfigError);
  CHECK_THROWS_AS(parse_config("[schedule]\nmode = wiggle\n", true),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("[thermal]\nh = not_a_number\n", true),
                  ConfigError);
}

TEST_CASE("bopp thickness and meta switches rebuild the device") {
  const RunConfig thin =
      parse_config("[run]\nbopp_thickness_um = 38\n", true);
  CHECK(thin.scenario.spec.loops[0].bopp.thickness == doctest::Approx(38e-6));
  const RunConfig conv = parse_config("[run]\nmeta = false\n", true);
  CHECK(conv.scenario.spec.loops.size() == 1);
}

TEST_CASE("simulate twice produces byte-identical digests") {
  TempDir a, b;
  REQUIRE(run("--out " + a.path.string() + " simulate") == 0);
  REQUIRE(run("--out " + b.path.string() + " simulate") == 0);
  CHECK(slurp(a.path / "manifest.txt") == slurp(b.path / "manifest.txt"));
  CHECK(slurp(a.path / "series.csv") == slurp(b.path / "series.csv"));
  // Manifest digest actually matches the file content.
  const std::string csv = slurp(a.path / "series.csv");
  CHECK(slurp(a.path / "manifest.txt").find(digest_hex(csv)) !=
        std::string::npos);
}

TEST_CASE("simulate respects a user config file") {
  TempDir d;
  write(d.path / "run.cfg",
        "[schedule]\nmode = step\nloop = outer\npower_w = 0.5\nt_on = 100\n"
        "[run]\nduration = 200\nstride = 10\n");
  REQUIRE(run("--out " + d.path.string() + "/out simulate " +
              (d.path / "run.cfg").string()) == 0);
  const std::string csv = slurp(d.path / "out" / "series.csv");
  CHECK(csv.rfind(kTimeSeriesHeader, 0) == 0);
  CHECK(csv.find("\n200,") != std::string::npos);  // final record at 200 s
}

TEST_CASE("config errors exit with code 2") {
  TempDir d;
  write(d.path / "bad.cfg", "[thermal]\nh = -5\n");
  CHECK(run("--out " + d.path.string() + "/out simulate " +
            (d.path / "bad.cfg").string()) == 2);
  CHECK(run("--out " + d.path.string() + "/out2 simulate /nonexistent.cfg") ==
        2);
  CHECK(run("--definitely-not-a-flag") == 2);
}

TEST_CASE("strict mode gates unknown keys, --no-strict tolerates them") {
  TempDir d;
  write(d.path / "odd.cfg", "[thermal]\nmystery = 1\n");
  CHECK(run("--out " + d.path.string() + "/a simulate " +
            (d.path / "odd.cfg").string()) == 2);
  CHECK(run("--no-strict --out " + d.path.string() + "/b simulate " +
            (d.path / "odd.cfg").string()) == 0);
}

TEST_CASE("numerical failures exit with code 3") {
  TempDir d;
  write(d.path / "unstable.cfg",
        "[thermal]\nscheme = explicit\ndt = 50\n[run]\nduration = 100\n");
  CHECK(run("--out " + d.path.string() + "/out simulate " +
            (d.path / "unstable.cfg").string()) == 3);
}

TEST_CASE("every preset runs and emits a manifest") {
  for (const std::string name :
       {"power_sweep", "step_response", "cyclic", "ambient_sweep",
        "forced_return", "alternating"}) {
    TempDir d;
    REQUIRE(run("--out " + d.path.string() + " preset " + name) == 0);
    const std::string manifest = slurp(d.path / "manifest.txt");
    CHECK(manifest.find("summary.csv") != std::string::npos);
  }
}

TEST_CASE("gripper command reports the jaw and grasp mode") {
  TempDir d;
  REQUIRE(run("--out " + d.path.string() + " gripper") == 0);
  const std::string csv = slurp(d.path / "gripper_summary.csv");
  CHECK(csv.find("close_grip") != std::string::npos);
}

TEST_CASE("params fragment files override the shipped defaults") {
  TempDir d;
  write(d.path / "frag.cfg", "[object]\nkind = hollow\nouter_width_mm = 70\n"
                             "cavity_width_mm = 54\n");
  REQUIRE(run("--out " + d.path.string() + "/out --params " +
              (d.path / "frag.cfg").string() + " gripper") == 0);
  CHECK(slurp(d.path / "out" / "gripper_summary.csv").find("insert_expand") !=
        std::string::npos);
}

TEST_CASE("sweep command emits one run per power level") {
  TempDir d;
  write(d.path / "run.cfg",
        "[schedule]\nmode = step\nloop = inner\npower_w = 0.75\nt_on = 60\n"
        "[run]\nduration = 80\nstride = 10\n");
  REQUIRE(run("--out " + d.path.string() + "/out sweep " +
              (d.path / "run.cfg").string()) == 0);
  const std::string manifest = slurp(d.path / "out" / "manifest.txt");
  CHECK(manifest.find("sweep_summary.csv") != std::string::npos);
  const std::string summary = slurp(d.path / "out" / "sweep_summary.csv");
  CHECK(summary.find("0.75,") != std::string::npos);  // top power level
}

TEST_CASE("calibrate writes a reusable fitted fragment") {
  TempDir d;
  REQUIRE(run("--out " + d.path.string() + " calibrate") == 0);
  const std::string frag = slurp(d.path / "fitted_params.cfg");
  const RunConfig cfg = parse_config(frag, true);
  CHECK(cfg.params.h >= 5.0);
  CHECK(cfg.params.h <= 30.0);
  CHECK(cfg.params.tau_mech >= 0.0);
  // The monotone best-objective trace is recorded.
  const std::string trace = slurp(d.path / "trace.csv");
  CHECK_FALSE(trace.empty());
}

TEST_CASE("nine-digit CSV formatting is locale-independent and exact") {
  CHECK(format_g9(0.0) == "0");
  CHECK(format_g9(-0.0) == "0");
  CHECK(format_g9(1.5) == "1.5");
  CHECK(format_g9(123456789.0) == "123456789");
  CHECK(format_g9(0.1) == "0.1");
  CHECK_THROWS(format_g9(std::numeric_limits<double>::quiet_NaN()));
  CHECK_THROWS(format_g9(std::numeric_limits<double>::infinity()));
}
