#pragma once

// The acceptance battery: one runner per criterion, at two scales.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "bflab/report.hpp"

namespace bflab::battery {

enum class Scale { fast, full };
Scale parse_scale(const std::string& s);
const char* scale_name(Scale s);

struct Criterion {
  int id = 0;
  std::string module;
  std::string title;
  double time_limit_s = 0.0;  // for the full scale
  std::function<report::RunReport(Scale, std::uint64_t)> run;
};

// Criteria 1-10. Reproducibility (11) reruns these and is exposed separately.
const std::vector<Criterion>& criteria();

report::RunReport run_criterion(const Criterion& c, Scale scale, std::uint64_t seed);

struct SuiteOptions {
  Scale scale = Scale::fast;
  std::uint64_t seed = 1;
  int workers = 0;               // 0: default worker count
  std::set<std::string> skip;    // module names or criterion ids ("c6")
};
report::RunReport suite(const SuiteOptions& opt);

// Reruns the suite with the same seed and with seed + 1; `first` is the
// report already obtained for opt.seed.
report::RunReport reproducibility(const SuiteOptions& opt, const report::RunReport& first);

}  // namespace bflab::battery
