// Runs criteria 1-10 at full scale with seed 1, then the reproducibility
// criterion. One line per criterion; nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <string>

#include "bflab/battery.hpp"
#include "bflab/report.hpp"

using namespace bflab;
namespace rp = bflab::report;

namespace {

void details(const rp::RunReport& r) {
  for (const auto& e : r.entries) {
    std::string line = "    " + std::string(rp::status_name(e.status)) + "  " + e.name + " = " + rp::num(e.value);
    if (!e.relation.empty() && e.relation != "holds") {
      line += "  (" + e.relation + " " + rp::num(e.target);
      if (e.relation == "~") line += " +- " + rp::num(e.tolerance);
      line += ")";
    }
    if (!e.note.empty()) line += "  [" + e.note + "]";
    std::printf("%s\n", line.c_str());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  battery::SuiteOptions opt;
  opt.scale = battery::Scale::full;
  opt.seed = seed;

  rp::RunReport first;
  first.command = "suite full";
  first.seed = seed;
  int failures = 0;

  for (const auto& c : battery::criteria()) {
    const auto t0 = std::chrono::steady_clock::now();
    const rp::RunReport r = battery::run_criterion(c, opt.scale, seed);
    const double dt = seconds_since(t0);
    first.append(r);
    const bool in_time = dt < c.time_limit_s;
    const bool ok = !r.failed() && in_time;
    failures += !ok;
    std::printf("criterion %d: %s  %s  (%.2f s, limit %.0f s%s)\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), dt,
                c.time_limit_s, in_time ? "" : ", over the limit");
    details(r);
    std::fflush(stdout);
  }

  const auto t0 = std::chrono::steady_clock::now();
  const rp::RunReport rep = battery::reproducibility(opt, first);
  const bool ok = !rep.failed();
  failures += !ok;
  std::printf("criterion 11: %s  reproducibility of suite full  (%.2f s)\n", ok ? "PASS" : "FAIL", seconds_since(t0));
  details(rep);

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
