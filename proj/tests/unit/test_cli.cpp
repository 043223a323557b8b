#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(EXDR_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(EXDR_DATA_DIR) + "/" + rel; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("cohomology of P2") {
    const Run r = run("cohomology --format machine " + data("manifests/p2.manifest"));
    CHECK(r.code == 0);
    CHECK(r.out.find("betti 0 1\nbetti 2 1\nbetti 4 1\n") != std::string::npos);
    CHECK(r.out.find("betti 1") == std::string::npos);
  }

  TEST_CASE("every manifest satisfies duality") {
    for (const auto& entry : std::filesystem::directory_iterator(data("manifests"))) {
      CAPTURE(entry.path().string());
      CHECK(run("cohomology " + entry.path().string()).code == 0);
      const Run pd = run("pd-check --format machine " + entry.path().string());
      CHECK(pd.code == 0);
      CHECK(pd.out.find("pd pass") != std::string::npos);
    }
  }

  TEST_CASE("refine prints a manifest with the right cohomology") {
    const Run r = run("refine " + data("fans/p1xp1.fan"));
    REQUIRE(r.code == 0);
    const auto tmp = std::filesystem::temp_directory_path() / "exdr_cli_refine.manifest";
    std::ofstream(tmp) << r.out;
    const Run c = run("cohomology --format machine " + tmp.string());
    CHECK(c.code == 0);
    CHECK(c.out.find("betti 2 2") != std::string::npos);
    std::filesystem::remove(tmp);
  }

  TEST_CASE("stokes") {
    const Run bad = run("stokes --format machine " + data("forms/counterexample.form"));
    CHECK(bad.code == 0);
    CHECK(bad.out.find("value 6.28318530") != std::string::npos);
    CHECK(bad.out.find("admissible 0") != std::string::npos);
    CHECK(bad.out.find("hypothesis violated") != std::string::npos);
    const Run good = run("stokes --format machine " + data("forms/half_space_exp.form"));
    CHECK(good.code == 0);
    CHECK(good.out.find("admissible 1") != std::string::npos);
  }

  TEST_CASE("pair and orient") {
    const Run p = run("pair --degree 1 --format machine " + data("charts/square.chart"));
    CHECK(p.code == 0);
    CHECK(p.out.find("pairing nondegenerate") != std::string::npos);
    const Run o = run("orient " + data("maps/lines_in_plane.maps"));
    CHECK(o.code == 0);
    CHECK(o.out.find("point with sign -") != std::string::npos);
    CHECK(run("orient " + data("maps/generic.maps")).code == 0);
    CHECK(run("orient " + data("maps/fiber_of_submersion.maps")).code == 0);
  }

  TEST_CASE("input errors exit with 1") {
    const auto empty = std::filesystem::temp_directory_path() / "exdr_cli_empty.manifest";
    std::ofstream(empty).close();
    const Run e = run("cohomology " + empty.string());
    CHECK(e.code == 1);
    CHECK(e.out.find("error:") != std::string::npos);
    std::filesystem::remove(empty);
    CHECK(run("cohomology " + data("does_not_exist.manifest")).code == 1);
    CHECK(run("orient " + data("maps/not_transverse.maps")).code == 1);
    CHECK(run("frobnicate x").code == 1);
    CHECK(run("pair " + data("charts/square.chart")).code == 1);  // --degree is required
  }
}
