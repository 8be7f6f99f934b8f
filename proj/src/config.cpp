#include "bflab/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bflab {

namespace {
std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

double parse_real(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ConfigError("field '" + field + "': expected a real number, got '" + text + "'");
  return v;
}

long long parse_integer(const std::string& field, const std::string& text) {
  const double v = parse_real(field, text);
  if (v != std::floor(v) || std::abs(v) > 9.0e15)
    throw ConfigError("field '" + field + "': expected an integer, got '" + text + "'");
  return static_cast<long long>(v);
}

std::uint64_t parse_seed(const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE || t[0] == '-')
    throw ConfigError("field 'seed': expected a nonnegative integer, got '" + text + "'");
  return v;
}

const std::string& ExperimentConfig::str(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError("missing field '" + key + "'");
  return it->second;
}

double ExperimentConfig::real(const std::string& key) const { return parse_real(key, str(key)); }

long long ExperimentConfig::integer(const std::string& key) const { return parse_integer(key, str(key)); }

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
  if (out.empty()) throw ConfigError("field '" + key + "': empty list");
  return out;
}

bool ExperimentConfig::flag(const std::string& key) const {
  const std::string v = str(key);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off" || v.empty()) return false;
  throw ConfigError("field '" + key + "': expected a boolean, got '" + v + "'");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace bflab
