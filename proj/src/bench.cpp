#include "toptw/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "toptw/errors.hpp"

namespace toptw {

namespace {

std::string number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(sep, pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? end : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char* name) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("bad ") + name + " '" + std::string(field) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

}  // namespace

std::string csv_row(const RunReport& r, int run) {
  std::string out = r.instance;
  out += ',' + std::to_string(r.m);
  out += ',' + std::to_string(run);
  out += ',' + std::to_string(r.seed);
  out += ',' + number(r.prize);
  out += ',' + std::to_string(r.nodes);
  out += ',' + number(r.found_at);
  out += ',' + number(r.elapsed);
  out += ',' + std::to_string(r.generations);
  return out;
}

std::vector<RunRecord> parse_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || trim(lines[0]) != kCsvHeader) throw ParseError(1, "unexpected CSV header");
  std::vector<RunRecord> out;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (trim(lines[k]).empty()) continue;
    const auto f = split(lines[k], ',');
    if (f.size() != 9) throw ParseError(k + 1, "expected 9 CSV columns");
    RunRecord rec;
    rec.report.instance = std::string(f[0]);
    rec.report.m = parse_field<int>(f[1], k + 1, "m");
    rec.run = parse_field<int>(f[2], k + 1, "run");
    rec.report.seed = parse_field<std::uint64_t>(f[3], k + 1, "seed");
    rec.report.prize = parse_field<double>(f[4], k + 1, "prize");
    rec.report.nodes = parse_field<std::size_t>(f[5], k + 1, "nodes");
    rec.report.found_at = parse_field<double>(f[6], k + 1, "found_at_s");
    rec.report.elapsed = parse_field<double>(f[7], k + 1, "elapsed_s");
    rec.report.generations = parse_field<long>(f[8], k + 1, "generations");
    out.push_back(std::move(rec));
  }
  return out;
}

std::string format_run(const RunReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "instance     %s\nm            %d\nseed         %llu\nprize        %g\n"
                "nodes        %zu\nfound at     %.2f s\nelapsed      %.2f s\ngenerations  %ld\n",
                r.instance.c_str(), r.m, static_cast<unsigned long long>(r.seed), r.prize, r.nodes,
                r.found_at, r.elapsed, r.generations);
  return buf;
}

std::vector<SuiteRow> aggregate(const std::vector<RunRecord>& records) {
  std::vector<SuiteRow> rows;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<const RunReport*>> groups;
  for (const auto& rec : records) {
    auto [it, inserted] = index.emplace(rec.report.instance, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&rec.report);
  }
  for (const auto& group : groups) {
    SuiteRow row;
    row.instance = group.front()->instance;
    row.runs = static_cast<int>(group.size());
    row.prize_min = row.prize_max = group.front()->prize;
    row.time_min = row.time_max = group.front()->found_at;
    row.best_nodes = group.front()->nodes;
    double prize_sum = 0.0;
    double time_sum = 0.0;
    for (const RunReport* r : group) {
      prize_sum += r->prize;
      time_sum += r->found_at;
      row.prize_min = std::min(row.prize_min, r->prize);
      if (r->prize > row.prize_max) {
        row.prize_max = r->prize;
        row.best_nodes = r->nodes;
      }
      row.time_min = std::min(row.time_min, r->found_at);
      row.time_max = std::max(row.time_max, r->found_at);
    }
    row.prize_avg = prize_sum / static_cast<double>(group.size());
    row.time_avg = time_sum / static_cast<double>(group.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_suite_table(const SuiteReport& report) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-16s %8s %10s %14s %10s %10s %10s\n", "Problem", "Min", "Avg",
                "Max (Nodes)", "Min s", "Avg s", "Max s");
  out << buf;
  for (const auto& row : report.rows) {
    const std::string max_nodes = number(row.prize_max) + " (" + std::to_string(row.best_nodes) + ")";
    std::snprintf(buf, sizeof(buf), "%-16s %8g %10.1f %14s %10.2f %10.2f %10.2f\n",
                  row.instance.c_str(), row.prize_min, row.prize_avg, max_nodes.c_str(),
                  row.time_min, row.time_avg, row.time_max);
    out << buf;
  }
  for (const auto& f : report.failures) out << "FAILED " << f.instance << ": " << f.error << '\n';
  return out.str();
}

SuiteOutput run_suite(const SuiteOptions& options) {
  if (options.runs < 1) throw ConfigError("runs per instance must be at least 1");
  if (options.jobs < 1) throw ConfigError("jobs must be at least 1");
  options.params.validate();
  std::error_code ec;
  if (!std::filesystem::is_directory(options.dir, ec)) {
    throw ConfigError("'" + options.dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(options.dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    files.push_back(entry.path());
  }
  if (files.empty()) throw ConfigError("no instance files in '" + options.dir.string() + "'");
  std::sort(files.begin(), files.end());

  SuiteOutput output;
  std::vector<Instance> instances;
  for (const auto& file : files) {
    try {
      instances.push_back(load_instance(file, options.format, options.node_limit));
    } catch (const std::exception& e) {
      output.report.failures.push_back({file.filename().string(), e.what()});
    }
  }

  const std::size_t runs = static_cast<std::size_t>(options.runs);
  const std::size_t tasks = instances.size() * runs;
  std::vector<std::optional<RunRecord>> results(tasks);
  std::vector<std::string> errors(tasks);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const Instance& inst = instances[t / runs];
      const int run = static_cast<int>(t % runs);
      AcsParams params = options.params;
      params.seed = options.params.seed + static_cast<std::uint64_t>(run);
      try {
        results[t] = RunRecord{solve(inst, params).report, run};
      } catch (const std::exception& e) {
        errors[t] = e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(options.jobs), tasks);
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t t = 0; t < tasks; ++t) {
    if (results[t]) {
      output.records.push_back(std::move(*results[t]));
    } else {
      output.report.failures.push_back({instances[t / runs].name(), errors[t]});
    }
  }
  output.report.rows = aggregate(output.records);
  return output;
}

std::string write_solution(const Instance& instance, const RouteSet& routes) {
  std::string out;
  for (const auto& route : routes.routes) {
    for (std::size_t k = 0; k < route.size(); ++k) {
      if (k > 0) out += ' ';
      out += std::to_string(instance.node(route[k]).id);
    }
    out += '\n';
  }
  out += "# prize " + number(routes.total_prize) + '\n';
  return out;
}

SolutionFile parse_solution(std::string_view text) {
  SolutionFile sol;
  const auto lines = lines_of(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::string_view line = trim(lines[k]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream in{std::string(line.substr(1))};
      std::string key;
      std::string value;
      if (in >> key >> value && key == "prize") {
        sol.claimed_prize = parse_field<double>(value, k + 1, "prize");
      }
      continue;
    }
    std::vector<int> route;
    std::istringstream in{std::string(line)};
    std::string token;
    while (in >> token) route.push_back(parse_field<int>(token, k + 1, "customer id"));
    sol.routes.push_back(std::move(route));
  }
  return sol;
}

ValidationResult validate_solution(const Instance& instance, const SolutionFile& solution,
                                   std::optional<int> m) {
  ValidationResult result;
  if (m && static_cast<int>(solution.routes.size()) > *m) {
    result.message = "fleet violation: " + std::to_string(solution.routes.size()) +
                     " routes for m = " + std::to_string(*m);
    return result;
  }
  std::set<std::size_t> seen;
  double prize = 0.0;
  for (std::size_t r = 0; r < solution.routes.size(); ++r) {
    std::size_t prev = 0;
    double departure = 0.0;
    for (int id : solution.routes[r]) {
      const auto idx = instance.index_of_id(id);
      if (!idx) {
        result.message = "unknown customer id " + std::to_string(id);
        return result;
      }
      if (*idx == 0) {
        result.message = "route " + std::to_string(r + 1) + " lists the depot (id " +
                         std::to_string(id) + ")";
        return result;
      }
      if (!seen.insert(*idx).second) {
        result.message = "disjointness violation: customer " + std::to_string(id) + " visited twice";
        return result;
      }
      const Node& node = instance.node(*idx);
      const double arrival = std::max(departure + instance.t(prev, *idx), node.window_open);
      if (arrival > node.window_close) {
        result.message = "window violation: customer " + std::to_string(id) + " reached at " +
                         number(arrival) + " after its window closes at " +
                         number(node.window_close);
        return result;
      }
      departure = arrival + node.service_time;
      prize += node.prize;
      prev = *idx;
    }
    if (departure + instance.t(prev, 0) > instance.horizon()) {
      result.message = "horizon violation: route " + std::to_string(r + 1) +
                       " returns to the depot after " + number(instance.horizon());
      return result;
    }
  }
  if (solution.claimed_prize && *solution.claimed_prize != prize) {
    result.message = "prize mismatch: file claims " + number(*solution.claimed_prize) +
                     ", routes collect " + number(prize);
    return result;
  }
  result.ok = true;
  result.prize = prize;
  result.message = "ok";
  return result;
}

}  // namespace toptw
