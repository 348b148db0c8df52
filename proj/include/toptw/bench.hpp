#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toptw/acs.hpp"
#include "toptw/instance.hpp"

namespace toptw {

inline constexpr std::string_view kCsvHeader =
    "instance,m,run,seed,prize,nodes,found_at_s,elapsed_s,generations";

struct RunRecord {
  RunReport report;
  int run = 0;
};

/// One CSV line (no trailing newline). Numbers use shortest round-trip form.
std::string csv_row(const RunReport& report, int run);
/// Parses a CSV produced by csv_row, header included.
std::vector<RunRecord> parse_csv(std::string_view text);

std::string format_run(const RunReport& report);

/// Per-instance statistics over repeated runs.
struct SuiteRow {
  std::string instance;
  int runs = 0;
  double prize_min = 0.0, prize_avg = 0.0, prize_max = 0.0;
  std::size_t best_nodes = 0;  // node count of the first run reaching prize_max
  double time_min = 0.0, time_avg = 0.0, time_max = 0.0;  // time to best
};

struct SuiteFailure {
  std::string instance;
  std::string error;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::vector<SuiteFailure> failures;
};

/// Groups records by instance (first-appearance order) and aggregates them.
std::vector<SuiteRow> aggregate(const std::vector<RunRecord>& records);

std::string format_suite_table(const SuiteReport& report);

struct SuiteOptions {
  std::filesystem::path dir;
  InstanceFormat format = InstanceFormat::SolomonDerived;
  std::optional<int> node_limit;
  int runs = 5;
  int jobs = 1;
  AcsParams params;  // run r uses seed params.seed + r
};

struct SuiteOutput {
  std::vector<RunRecord> records;
  SuiteReport report;
};

/// Runs every instance file in `dir` (sorted by name) `runs` times. Files
/// that fail to load are recorded as failures. Throws ConfigError for an
/// empty or missing directory.
SuiteOutput run_suite(const SuiteOptions& options);

/// Solution text: one route per line as space-separated file ids, then a
/// trailing "# prize <value>" comment.
std::string write_solution(const Instance& instance, const RouteSet& routes);

struct SolutionFile {
  std::vector<std::vector<int>> routes;  // file ids
  std::optional<double> claimed_prize;
};

SolutionFile parse_solution(std::string_view text);

struct ValidationResult {
  bool ok = false;
  double prize = 0.0;
  std::string message;  // first violated constraint when !ok
};

/// Re-propagates every route from the depot and checks ids, disjointness,
/// time windows, the return by the horizon, the fleet size (when m is given)
/// and the claimed prize.
ValidationResult validate_solution(const Instance& instance, const SolutionFile& solution,
                                   std::optional<int> m = std::nullopt);

}  // namespace toptw
