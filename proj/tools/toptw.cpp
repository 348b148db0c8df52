// toptw: solve, benchmark and validate Team Orienteering Problems with Time Windows.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "toptw/acs.hpp"
#include "toptw/bench.hpp"
#include "toptw/errors.hpp"
#include "toptw/instance.hpp"

namespace {

struct CommonArgs {
  std::string format = "solomon";
  std::optional<int> node_limit;
  toptw::AcsParams params;
  std::string out;
};

void add_solver_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--format", args.format, "Instance format")
      ->check(CLI::IsMember({"solomon", "cordeau"}))
      ->capture_default_str();
  cmd->add_option("--node-limit", args.node_limit, "Keep only the first k customers (Solomon)");
  cmd->add_option("--m", args.params.m, "Fleet size")->capture_default_str();
  cmd->add_option("--time-limit", args.params.time_limit, "Wall-clock seconds per run")
      ->capture_default_str();
  cmd->add_option("--seed", args.params.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--nhat", args.params.nhat, "Expected probabilistic choices per ant")
      ->capture_default_str();
  cmd->add_option("--rho", args.params.rho, "Global pheromone update rate")->capture_default_str();
  cmd->add_option("--psi", args.params.psi, "Local pheromone update rate")->capture_default_str();
  cmd->add_option("--ants", args.params.n_ants, "Colony size")->capture_default_str();
  cmd->add_option("--ls-init", args.params.ls.ls_init, "Initial sub-chain length")
      ->capture_default_str();
  cmd->add_option("--ls-wnd", args.params.ls.ls_wnd, "Stagnant generations before lengthening")
      ->capture_default_str();
  cmd->add_option("--ls-step", args.params.ls.ls_step, "Sub-chain length increment")
      ->capture_default_str();
  cmd->add_option("--ni", args.params.ls.ni_cap, "Consecutive non-improving moves accepted")
      ->capture_default_str();
  cmd->add_option("--max-generations", args.params.max_generations,
                  "Stop after this many generations");
  cmd->add_option("--target", args.params.target_prize, "Stop once this prize is reached");
  cmd->add_option("--out", args.out, "CSV output path");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

int run_solve(const std::string& instance_path, const CommonArgs& args,
              const std::string& solution_out) {
  const auto instance =
      toptw::load_instance(instance_path, toptw::parse_format(args.format), args.node_limit);
  const auto result = toptw::solve(instance, args.params);
  std::cout << toptw::format_run(result.report);
  if (!args.out.empty()) {
    write_file(args.out, std::string(toptw::kCsvHeader) + "\n" + toptw::csv_row(result.report, 0) +
                             "\n");
  }
  if (!solution_out.empty()) {
    write_file(solution_out, toptw::write_solution(instance, result.routes));
  }
  return 0;
}

int run_suite(const std::string& dir, const CommonArgs& args, int runs, int jobs) {
  toptw::SuiteOptions options;
  options.dir = dir;
  options.format = toptw::parse_format(args.format);
  options.node_limit = args.node_limit;
  options.runs = runs;
  options.jobs = jobs;
  options.params = args.params;
  const auto output = toptw::run_suite(options);
  std::cout << toptw::format_suite_table(output.report);
  if (!args.out.empty()) {
    std::string csv = std::string(toptw::kCsvHeader) + "\n";
    for (const auto& rec : output.records) csv += toptw::csv_row(rec.report, rec.run) + "\n";
    write_file(args.out, csv);
  }
  return output.records.empty() ? 1 : 0;
}

int run_validate(const std::string& instance_path, const std::string& format,
                 std::optional<int> node_limit, const std::string& solution_path,
                 std::optional<int> m) {
  const auto instance =
      toptw::load_instance(instance_path, toptw::parse_format(format), node_limit);
  std::ifstream in(solution_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open solution file '" + solution_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  const auto result =
      toptw::validate_solution(instance, toptw::parse_solution(text.str()), m);
  if (!result.ok) {
    std::cerr << "invalid: " << result.message << '\n';
    return 1;
  }
  std::cout << "valid, prize " << result.prize << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ant Colony System for the Team Orienteering Problem with Time Windows"};
  app.require_subcommand(1);

  CommonArgs solve_args;
  std::string instance_path;
  std::string solution_out;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("--instance", instance_path, "Instance file")->required();
  solve_cmd->add_option("--solution-out", solution_out, "Write the best routes here");
  add_solver_flags(solve_cmd, solve_args);

  CommonArgs suite_args;
  std::string dir;
  int runs = 5;
  int jobs = 1;
  auto* suite_cmd = app.add_subcommand("suite", "Run every instance in a directory");
  suite_cmd->add_option("--dir", dir, "Instance directory")->required();
  suite_cmd->add_option("--runs", runs, "Seeded runs per instance")->capture_default_str();
  suite_cmd->add_option("--jobs", jobs, "Parallel worker slots")->capture_default_str();
  add_solver_flags(suite_cmd, suite_args);

  std::string validate_instance;
  std::string validate_format = "solomon";
  std::optional<int> validate_limit;
  std::string solution_path;
  std::optional<int> validate_m;
  auto* validate_cmd = app.add_subcommand("validate", "Check a solution file");
  validate_cmd->add_option("--instance", validate_instance, "Instance file")->required();
  validate_cmd->add_option("--format", validate_format, "Instance format")
      ->check(CLI::IsMember({"solomon", "cordeau"}));
  validate_cmd->add_option("--node-limit", validate_limit, "Keep only the first k customers");
  validate_cmd->add_option("--solution", solution_path, "Solution file")->required();
  validate_cmd->add_option("--m", validate_m, "Fleet size to enforce");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return run_solve(instance_path, solve_args, solution_out);
    if (*suite_cmd) return run_suite(dir, suite_args, runs, jobs);
    if (*validate_cmd) {
      return run_validate(validate_instance, validate_format, validate_limit, solution_path,
                          validate_m);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
