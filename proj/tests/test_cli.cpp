#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <cmath>
#include <string>

#include "json.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("BFLAB_CLI");
  return p ? p : "./bflab";
}

// Runs the CLI; stderr is folded into out when `with_err`.
Result run(const std::string& args, bool with_err = false) {
  const std::string cmd = cli_path() + " " + args + (with_err ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

double entry(const nlohmann::json& j, const std::string& name) {
  for (const auto& e : j["checks"])
    if (e["name"] == name) return std::stod(e["value"].get<std::string>());
  FAIL("no entry " << name);
  return 0;
}

}  // namespace

TEST_CASE("tau at p = 2") {
  const auto r = run("bellman tau --p 2");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(entry(j, "tau") == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(j["result"] == "pass");
  CHECK(j["seed"] == 1);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("bellman nosuch").code == 2);
  CHECK(run("bellman tau --bogus 3").code == 2);
  const auto bad = run("bellman tau --p abc", true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("'p'") != std::string::npos);
  CHECK(run("dyadic buckley --weight file:/nonexistent/w.txt").code == 2);
  CHECK(run("bellman tau --format xml").code == 2);
}

TEST_CASE("malformed config file names the field") {
  write("cli_bad.cfg", "command = laminate ratio\np = 3\neta = notanumber\n");
  const auto r = run("run --config cli_bad.cfg", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("'eta'") != std::string::npos);
  write("cli_bad2.cfg", "command = laminate ratio\nthis line has no equals sign\n");
  const auto r2 = run("run --config cli_bad2.cfg", true);
  CHECK(r2.code == 2);
  CHECK(r2.out.find(":2:") != std::string::npos);
  std::remove("cli_bad.cfg");
  std::remove("cli_bad2.cfg");
}

TEST_CASE("config files and flag overrides") {
  write("cli_ok.cfg", "# tau at 4\ncommand = bellman tau\np = 4\nseed = 7\n");
  const auto a = run("run --config cli_ok.cfg");
  REQUIRE(a.code == 0);
  const auto ja = nlohmann::json::parse(a.out);
  CHECK(entry(ja, "tau") == doctest::Approx(std::pow(3.0 / 8.0, 0.25)).epsilon(1e-12));
  CHECK(ja["seed"] == 7);
  const auto b = run("bellman tau --config cli_ok.cfg --p 2");
  REQUIRE(b.code == 0);
  CHECK(entry(nlohmann::json::parse(b.out), "tau") == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  std::remove("cli_ok.cfg");
}

TEST_CASE("same seed, same bytes") {
  const std::string args = "stoch riemann-gap --paths 3000 --steps 50 --seed 11";
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run("stoch riemann-gap --paths 3000 --steps 50 --seed 12");
  CHECK(c.out != a.out);
  CHECK(run(args + " --timing").out.find("wall_time_s") != std::string::npos);
  CHECK(a.out.find("wall_time_s") == std::string::npos);
}

TEST_CASE("csv output and failed checks") {
  const auto r = run("laminate sweep --p 3 --etas 1e-1,1e-2,1e-3");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("eta,ratio,ratio^(1/p),target\n", 0) == 0);
  // Reversed sweep moves away from the limit.
  CHECK(run("laminate sweep --p 3 --etas 1e-3,1e-1").code == 1);
  const auto j = run("laminate sweep --p 3 --etas 1e-1 --format json");
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["command"] == "laminate sweep");
}

TEST_CASE("output file") {
  REQUIRE(run("qc distortion --K 2 --output cli_out.csv").code == 0);
  std::ifstream f("cli_out.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "parameter,value");
  std::remove("cli_out.csv");
}

TEST_CASE("every subcommand has help") {
  for (const char* c : {"dyadic buckley", "dyadic mt-ratio", "bellman zigzag", "bellman interp-sweep", "bellman jn",
                        "planar norm-ascent", "planar identity113", "planar ap", "laminate check", "stoch ab-mc",
                        "stoch constants", "qc sobolev", "qc weight", "suite"})
    CHECK(run(std::string(c) + " --help").code == 0);
}
