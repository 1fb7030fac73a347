// Copyright 2026 The Enact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "enact/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Enactive agent experiments: languages, tasks, learning and scenarios."};
  app.require_subcommand(1);
  app.set_version_flag("--version", enact::kToolVersion);

  enact::RunConfig cfg;
  std::optional<std::uint64_t> trials;
  std::optional<std::size_t> max_steps;
  std::string fixture_file;
  bool quiet = false;

  auto common = [&](CLI::App* sub, const std::string& input_help) {
    sub->add_option("input", cfg.input, input_help)->required();
    sub->add_option("--seed", cfg.seed, "Seed for every random draw")->capture_default_str();
    sub->add_option("--trials", trials, "Trials for Monte Carlo experiments");
    sub->add_option("--out", cfg.out_dir, "Directory for report.json, report.csv and trace.jsonl");
    sub->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    sub->add_option("--max-states", cfg.caps.max_states, "Cap on environment states")->capture_default_str();
    sub->add_option("--max-programs", cfg.caps.max_programs, "Cap on vocabulary size")->capture_default_str();
    sub->add_option("--max-steps", max_steps, "Stop scenarios after this many steps");
    sub->add_flag("-q,--quiet", quiet, "Do not print the report to stdout");
  };
  common(app.add_subcommand("validate", "Check every declared entity"), "Document path");
  common(app.add_subcommand("enumerate", "List the statement universe"), "Document path");
  common(app.add_subcommand("learn", "Policies and proxy choices per task"), "Document path");
  common(app.add_subcommand("experiment", "Proxy comparison experiment"), "Document path");
  common(app.add_subcommand("scenario", "Run a multi-organism scenario"), "Built-in name or document path");
  auto* fx = app.add_subcommand("fixture", "Reproduce a built-in fixture");
  common(fx, "Fixture name");
  fx->add_option("--file", fixture_file, "Replace the fixture document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? enact::kExitOk : enact::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.trials = trials;
  cfg.max_steps = max_steps;
  const auto out = enact::run_command(cfg, fixture_file);
  try {
    enact::write_outputs(cfg, out);
  } catch (const std::exception& e) {
    std::cerr << "enact: cannot write outputs: " << e.what() << "\n";
    return enact::kExitFailure;
  }
  if (!quiet) {
    if (cfg.format == "csv" && !out.csv.empty())
      std::cout << out.csv;
    else
      std::cout << out.report.dump(2) << "\n";
  }
  return out.exit_code;
}
