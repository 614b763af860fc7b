// End-to-end checks of the installed binary: exit codes and file outputs.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string command = std::string(QWALK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("qwalk_cli_" + tag);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli runs a simulation end to end", "[cli]") {
  const fs::path dir = fresh_dir("sim");
  REQUIRE(run_cli("simulate --size 2 --delta 0.5 --steps 8 --position 1 --coin 1 --out " +
                  dir.string()) == 0);
  REQUIRE(fs::exists(dir / "series.csv"));
  REQUIRE(fs::exists(dir / "heatmap.csv"));
  REQUIRE(fs::exists(dir / "manifest.json"));
}

TEST_CASE("cli exit codes distinguish validation from I/O failures", "[cli]") {
  SECTION("invalid coin bias") {
    REQUIRE(run_cli("simulate --size 2 --delta 1.5 --out " + fresh_dir("bad").string()) == 2);
  }
  SECTION("line size below 2") {
    REQUIRE(run_cli("spectrum --size 1 --out " + fresh_dir("bad2").string()) == 2);
  }
  SECTION("missing graph") {
    REQUIRE(run_cli("simulate --out " + fresh_dir("bad3").string()) == 2);
  }
  SECTION("unknown flag") {
    REQUIRE(run_cli("simulate --size 2 --frobnicate") == 2);
  }
  SECTION("missing subcommand") {
    REQUIRE(run_cli("") == 2);
  }
  SECTION("unreadable config file") {
    REQUIRE(run_cli("simulate --config /nonexistent/config.json") == 3);
  }
  SECTION("output directory blocked by a file") {
    const fs::path blocker = fs::temp_directory_path() / "qwalk_cli_blocker";
    std::ofstream(blocker).put('x');
    REQUIRE(run_cli("simulate --size 2 --out " + (blocker / "sub").string()) == 3);
  }
}

TEST_CASE("cli spectrum and export-circuit smoke", "[cli]") {
  const fs::path dir = fresh_dir("smoke");
  REQUIRE(run_cli("spectrum --size 5 --qmax 1000 --eps 1e-9 --out " + dir.string()) == 0);
  REQUIRE(fs::exists(dir / "spectrum.json"));
  REQUIRE(fs::exists(dir / "eigenvalues.csv"));

  const fs::path dir2 = fresh_dir("smoke2");
  REQUIRE(run_cli("export-circuit --size 2 --delta 0.5 --out " + dir2.string()) == 0);
  REQUIRE(fs::exists(dir2 / "circuit.json"));

  const fs::path dir3 = fresh_dir("smoke3");
  REQUIRE(run_cli("sensitivity --size 5 --delta-a 0.5 --delta-b 0.51 --steps 30 --out " +
                  dir3.string()) == 0);
  REQUIRE(fs::exists(dir3 / "sensitivity.csv"));

  const fs::path dir4 = fresh_dir("smoke4");
  REQUIRE(run_cli("two-walker --size 3 --steps 10 --modes 4 6 --out " + dir4.string()) == 0);
  REQUIRE(fs::exists(dir4 / "two_walker.csv"));
}

TEST_CASE("cli reruns from a manifest", "[cli]") {
  const fs::path dir = fresh_dir("rerun_a");
  REQUIRE(run_cli("simulate --size 4 --delta 0.3 --steps 20 --out " + dir.string()) == 0);
  const fs::path dir2 = fresh_dir("rerun_b");
  REQUIRE(run_cli("simulate --config " + (dir / "manifest.json").string() + " --out " +
                  dir2.string()) == 0);
  std::ifstream a(dir / "series.csv"), b(dir2 / "series.csv");
  const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  REQUIRE(sa == sb);
}

TEST_CASE("cli version flag", "[cli]") {
  REQUIRE(run_cli("--version") == 0);
}
