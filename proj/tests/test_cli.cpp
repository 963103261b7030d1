#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(OFL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ofl-cli-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 1") {
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("analyze") == 1);
    CHECK(run("analyze --scenario no-such-scenario") == 1);
    CHECK(run("analyze --config /nonexistent/file.json") == 1);
    CHECK(run("list planets") == 1);
    CHECK(run("list spaces") == 0);
  }

  TEST_CASE("malformed config exits with 1") {
    const fs::path dir = scratch("bad");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.json") << R"({"version": 1, "seed": 1, "kind": "analyze", "space": {"type": "interval"}, "oops": 1})";
    CHECK(run("analyze --config " + (dir / "bad.json").string()) == 1);
  }

  TEST_CASE("analyze writes the step-map report") {
    const fs::path out = scratch("step");
    REQUIRE(run("analyze --scenario remark-4-6 --out " + out.string()) == 0);
    const std::string csv = slurp(out / "summary.csv");
    CHECK(csv.find("k_orbit,2,,0.5,1,") != std::string::npos);
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "witnesses.csv"));
  }

  TEST_CASE("solve writes a trace") {
    const fs::path out = scratch("square");
    REQUIRE(run("solve --scenario example-4-4 --out " + out.string()) == 0);
    const std::string csv = slurp(out / "summary.csv");
    CHECK(csv.find("orbit_center,converged") != std::string::npos);
    CHECK(fs::exists(out / "trace.json"));
  }

  TEST_CASE("same scenario and seed give byte-identical CSV") {
    const fs::path a = scratch("det-a"), b = scratch("det-b"), c = scratch("det-c");
    REQUIRE(run("analyze --scenario example-3-5 --seed 5 --out " + a.string()) == 0);
    REQUIRE(run("analyze --scenario example-3-5 --seed 5 --out " + b.string()) == 0);
    REQUIRE(run("analyze --scenario example-3-5 --seed 5 --workers 3 --out " + c.string()) == 0);
    CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
    CHECK(slurp(a / "summary.csv") == slurp(c / "summary.csv"));
    CHECK(slurp(a / "witnesses.csv") == slurp(b / "witnesses.csv"));
  }

  TEST_CASE("OFL_OUT sets the output root") {
    const fs::path root = scratch("root");
    const std::string cmd = "OFL_OUT=" + root.string() + " " + OFL_CLI_PATH +
                            " normal --scenario normal-interval > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(root / "normal-interval-normal" / "summary.csv"));
  }
}
