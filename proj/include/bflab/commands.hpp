#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bflab/config.hpp"
#include "bflab/report.hpp"

namespace bflab::cli {

struct ParamSpec {
  std::string key;
  std::string default_value;  // empty string with required = true means no default
  std::string help;
  bool required = false;
};

struct CommandSpec {
  std::string group;
  std::string name;
  std::string help;
  std::string default_format;  // csv or json
  std::vector<ParamSpec> params;
  std::function<report::RunReport(const ExperimentConfig&)> run;
  std::string full_name() const { return group + " " + name; }
};

const std::vector<CommandSpec>& registry();
const CommandSpec* find(const std::string& full_name);

// Fills defaults, rejects unknown keys, and runs the command. The report
// carries the resolved configuration.
report::RunReport run(ExperimentConfig cfg);

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

// Renders in cfg.format (or the command default).
std::string render(const report::RunReport& r, const ExperimentConfig& cfg);

}  // namespace bflab::cli
