// Copyright 2026 The steprag Authors.
//
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

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "steprag/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Step-format trajectory checking, search-behaviour detection, "
      "reward scoring and metrics."};
  app.require_subcommand(1);

  steprag::CommandOptions o;
  std::string config, input, output = "-", goldens;
  std::uint64_t seed = 0;
  double lambda_f = 0, lambda_p = 0;
  std::size_t top_k = 0, budget = 0, max_in_flight = 0;

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"validate", "check the format of trajectory records"},
      {"rollout", "generate trajectories for question records"},
      {"detect", "label steps for over- and under-search"},
      {"score", "compute the reward for labeled records"},
      {"report", "aggregate CEM, OSR and USR"},
      {"generate", "emit random well-formed trajectory records"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config, "JSON run config");
    if (std::string(c.name) != "generate") {
      sub->add_option("--input", input, "input JSONL")->required();
    }
    sub->add_option("--output", output, "output path, - for stdout");
    sub->add_flag("--strict", o.strict, "exit 1 if any record fails");
    sub->add_option("--seed", seed, "seed for randomized fixtures");
    sub->add_flag("--over-search-only", o.over_search_only,
                  "disable under-search detection");
    sub->add_flag("--under-search-only", o.under_search_only,
                  "disable over-search detection");
    sub->add_option("--lambda-f", lambda_f, "format weight");
    sub->add_option("--lambda-p", lambda_p, "process bonus weight");
    sub->add_option("--top-k", top_k, "passages per search");
    sub->add_option("--budget", budget, "maximum steps per rollout");
    sub->add_option("--max-in-flight", max_in_flight, "concurrent requests");
    if (std::string(c.name) == "score") {
      sub->add_option("--goldens", goldens, "JSONL of {id, golden_answers}");
    }
    if (std::string(c.name) == "generate") {
      sub->add_option("--count", o.count, "number of records");
      sub->add_option("--max-steps", o.max_steps, "steps per trajectory");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : steprag::exit_code::kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (!config.empty()) o.config = config;
  o.input = input;
  o.output = output;
  if (!goldens.empty()) o.goldens = goldens;
  if (sub->count("--seed")) o.seed = seed;
  if (sub->count("--lambda-f")) o.lambda_f = lambda_f;
  if (sub->count("--lambda-p")) o.lambda_p = lambda_p;
  if (sub->count("--top-k")) o.top_k = top_k;
  if (sub->count("--budget")) o.budget = budget;
  if (sub->count("--max-in-flight")) o.max_in_flight = max_in_flight;
  return steprag::run_command(sub->get_name(), o, std::cout, std::cerr);
}
