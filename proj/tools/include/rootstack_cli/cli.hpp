#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rootstack/rational.hpp"
#include "rootstack/targets.hpp"

namespace rootstack::cli {

inline constexpr int kMaxCap = 64;
inline constexpr int kMaxExtended = 64;

enum class Command {
  ifunction,
  invariants,
  stabilize,
  check_identity,
  period,
  compare_periods,
  laurent_period
};

enum class Format { table, records };

// Throws ConfigError on an unknown name.
Command parse_command(std::string_view name);
std::string to_string(Command command);
Format parse_format(std::string_view name);

// "3,5;5,7" -> {(3,5), (5,7)}. Throws ConfigError.
std::vector<RootData> parse_root_list(std::string_view text);

struct JobConfig {
  std::optional<TargetSpace> target;
  DivisorArrangement divisors;
  std::optional<RootData> roots;
  int cap = 0;
  std::optional<int> m;
  Command command = Command::ifunction;
  Format format = Format::table;

  // Series flavour for ifunction/invariants, or "extended" for stabilize.
  std::string kind;
  // Root vectors for stabilize; falls back to roots.
  std::vector<RootData> root_list;
  // Inline polynomial for laurent-period.
  std::string laurent;
  // Total x-degree bound for the series whose x-dependence is unbounded.
  int x_degree = 1;
};

// Parses and validates a JSON document:
// {"target":{"factors":[..]}, "divisors":[{"name":..,"coeffs":[..]}..],
//  "roots":[..]?, "cap":N, "m":N?}. Throws ConfigError naming the line or
// field at fault.
JobConfig parse_config(std::string_view text);
JobConfig load_config(const std::string& path);

// Exit statuses.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kMirrorMap = 2;
inline constexpr int kDivisibility = 3;

struct Report {
  int status = kPass;
  std::string output;
  // Error text for stderr; empty when the run completed.
  std::string diagnostic;
};

// Runs config.command. Every engine error is mapped to a status: mirror map
// 2, divisibility 3, anything else 1.
Report run(const JobConfig& config);

// One record of a records report: the tab-separated fields before the value
// and the exact value in the last column.
struct Record {
  std::vector<std::string> fields;
  Rational value;

  bool operator==(const Record&) const = default;
};

// Skips blank lines and '#' comments. Throws std::invalid_argument naming
// the line.
std::vector<Record> parse_records(std::string_view text);

}  // namespace rootstack::cli
