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

// Pipeline commands: validate, rollout, detect, score, report, generate.
//
// Each stage has an in-memory form over parsed JSONL lines (used by tests
// and the acceptance suite) and a run_* wrapper that does file I/O and maps
// failures to exit codes. Output order always matches input order and every
// output record carries the input id.

#ifndef STEPRAG_COMMANDS_HPP_
#define STEPRAG_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "steprag/config.hpp"
#include "steprag/io.hpp"

namespace steprag {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidationFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kIoError = 3;
}  // namespace exit_code

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path input;
  std::filesystem::path output = "-";
  bool strict = false;
  std::optional<std::uint64_t> seed;
  bool over_search_only = false;
  bool under_search_only = false;
  std::optional<double> lambda_f;
  std::optional<double> lambda_p;
  std::optional<std::size_t> top_k;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> max_in_flight;
  std::optional<std::filesystem::path> goldens;  // score: {id, golden_answers}
  std::size_t count = 100;                       // generate
  int max_steps = 6;                             // generate
};

/// Loads the config file (or defaults) and applies flag overrides.
/// Throws ConfigError or IoError.
RunConfig resolve_config(const CommandOptions& options);

struct StageOutput {
  std::vector<Json> records;
  bool any_failure = false;  // a malformed line, F = 0 or a per-record error
};

StageOutput validate_records(std::span<const JsonlLine> lines);

StageOutput rollout_records(std::span<const JsonlLine> lines,
                            GeneratorBackend& generator,
                            RetrieverBackend& retriever,
                            const RunConfig& config);

StageOutput detect_records(std::span<const JsonlLine> lines,
                           AnswerBackend& policy, JudgeBackend& judge,
                           JudgeBackend& verifier, const RunConfig& config);

using GoldenTable =
    std::map<std::string, std::vector<std::string>, std::less<>>;

StageOutput score_records(std::span<const JsonlLine> lines,
                          const RunConfig& config,
                          const GoldenTable* goldens = nullptr);

struct ReportOutput {
  MetricsReport report;
  Json record;        // machine-readable report including config hashes
  std::string table;  // human-readable
};

ReportOutput report_records(std::span<const JsonlLine> lines,
                            const RunConfig& config);

StageOutput generate_records(std::uint64_t seed, std::size_t count,
                             int max_steps);

/// Stable summary of everything that affects a report's numbers, with its
/// fingerprint under "hash".
Json config_fingerprint(const RunConfig& config);

/// Dispatches by name. The report table goes to `out` when the machine
/// output is a file; diagnostics go to `err`. Returns an exit code.
int run_command(std::string_view name, const CommandOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace steprag

#endif  // STEPRAG_COMMANDS_HPP_
