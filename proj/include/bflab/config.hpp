#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bflab {

// Bad command line or configuration; maps to the usage exit status.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;  // "group name", e.g. "bellman tau"
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  std::string output;   // empty: stdout
  std::string format;   // csv | json; empty: command default
  bool timing = false;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  const std::string& str(const std::string& key) const;
  double real(const std::string& key) const;
  // Accepts "1e5" style input as long as the value is integral.
  long long integer(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;  // comma separated
  bool flag(const std::string& key) const;
};

// Flat "key = value" lines; '#' starts a comment. Keys are returned verbatim.
std::map<std::string, std::string> read_config_file(const std::string& path);

double parse_real(const std::string& field, const std::string& text);
long long parse_integer(const std::string& field, const std::string& text);
std::uint64_t parse_seed(const std::string& text);

}  // namespace bflab
