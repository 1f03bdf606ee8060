// Copyright 2026 The meshplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// meshplan: run placement/path-planning sweeps and compare their results.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "meshplan/bench.hpp"

namespace {

using namespace meshplan::bench;

struct RunFlags {
  std::optional<int> seed_count;
  std::optional<double> max_seconds;
  std::string out;
  int workers = 0;
  bool timings = false;
  bool report = false;
  bool progress = false;
  bool print_config = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--seed-count", f.seed_count, "Seeds 1..N for random strategies")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", f.out, "CSV output path (default: the config's output, else stdout)");
  cmd->add_option("--max-seconds", f.max_seconds, "Time limit per solve")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", f.workers, "Parallel jobs (default: $MESHPLAN_WORKERS, else all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--timings", f.timings, "Append a solve_ms column (output is then no longer reproducible)");
  cmd->add_flag("--report", f.report, "Print the comparison report to stderr afterwards");
  cmd->add_flag("--progress", f.progress, "Show job progress on stderr");
  cmd->add_flag("--print-config", f.print_config, "Print the effective config as JSON and exit");
}

int execute(ScenarioConfig config, const RunFlags& f) {
  if (f.seed_count) config.seeds = seed_range(*f.seed_count);
  if (f.max_seconds) config.solver.max_seconds = *f.max_seconds;
  if (!f.out.empty()) config.output = f.out;
  validate(config);
  if (f.print_config) {
    std::cout << config_to_json(config).dump(2) << '\n';
    return 0;
  }
  RunOptions options;
  options.workers = f.workers;
  std::mutex io;
  if (f.progress) {
    options.progress = [&io](std::size_t done, std::size_t total) {
      std::lock_guard lock(io);
      std::cerr << "\r[" << done << '/' << total << "] jobs" << (done == total ? "\n" : "") << std::flush;
    };
  }
  const auto rows = run_scenario(config, options);
  const CsvOptions csv{f.timings};
  if (config.output.empty() || config.output == "-") {
    write_csv(rows, std::cout, csv);
  } else {
    emit_csv(rows, config.output, csv);
    std::cerr << "wrote " << rows.size() << " rows to " << config.output << '\n';
  }
  if (f.report) {
    try {
      std::cerr << compare_report(rows);
    } catch (const std::invalid_argument& e) {
      std::cerr << "report skipped: " << e.what() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static placement and mobile path planning for grid mesh networks"};
  app.require_subcommand(1);

  RunFlags flags;
  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a sweep described by a JSON config");
  run->add_option("config", config_path, "Scenario config (schema_version 1)")->required()->check(CLI::ExistingFile);
  add_run_flags(run, flags);

  auto* table2 = app.add_subcommand("table2", "Random vs exact static placement, MILP-Cov paths");
  auto* table3 = app.add_subcommand("table3", "MILP-Cov coverage across travel ranges");
  auto* fig4 = app.add_subcommand("fig4", "MILP-Mov movements for full coverage as node counts grow");
  for (auto* cmd : {table2, table3, fig4}) add_run_flags(cmd, flags);

  std::vector<std::string> csv_paths;
  std::string report_out;
  auto* compare = app.add_subcommand("compare", "Compare strategies across one or more result CSVs");
  compare->add_option("csv", csv_paths, "Result CSV files")->required()->check(CLI::ExistingFile);
  compare->add_option("--out", report_out, "Write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return execute(load_config(config_path), flags);
    if (table2->parsed()) return execute(table2_config(), flags);
    if (table3->parsed()) return execute(table3_config(), flags);
    if (fig4->parsed()) return execute(fig4_config(), flags);
    if (compare->parsed()) {
      std::vector<ResultRow> rows;
      for (const auto& path : csv_paths) {
        auto part = read_csv_file(path);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      const auto text = compare_report(rows);
      if (report_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(report_out);
        if (!(out << text)) throw std::runtime_error("cannot write '" + report_out + "'");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "meshplan: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
