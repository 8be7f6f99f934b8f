#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bflab::report {

enum class Status { pass, fail, info, skipped };
const char* status_name(Status s);

struct Entry {
  std::string name;
  std::string anchor;    // descriptive label from the registry
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "<=", ">=", "~", "holds", ""
  Status status = Status::info;
  std::string note;
};

// Anchor text for a registry key; throws std::out_of_range for unknown keys.
const std::string& anchor(const std::string& key);
const std::vector<std::pair<std::string, std::string>>& anchor_registry();

Entry at_most(const std::string& key, const std::string& name, double value, double bound);
Entry at_least(const std::string& key, const std::string& name, double value, double bound);
Entry near(const std::string& key, const std::string& name, double value, double target, double tol);
Entry holds(const std::string& key, const std::string& name, bool ok, double value = 0.0,
            const std::string& note = "");
Entry info(const std::string& key, const std::string& name, double value, const std::string& note = "");
Entry skipped(const std::string& key, const std::string& name, const std::string& note);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool empty() const { return rows.empty(); }
};

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // resolved, sorted by key
  std::uint64_t seed = 0;
  std::vector<Entry> entries;
  Table table;
  std::optional<double> wall_time;
  std::string version;

  bool failed() const;
  void add(Entry e) { entries.push_back(std::move(e)); }
  void append(const RunReport& o);
};

// Shortest round-trip decimal form.
std::string num(double v);

std::string to_json(const RunReport& r);
// The table when present, else one line per entry.
std::string to_csv(const RunReport& r);

inline constexpr const char* kVersion = "bflab 0.1.0";

}  // namespace bflab::report
