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

// Run configuration, read from one JSON document:
//
//   {
//     "reward":    {"lambda_f": 0.2, "lambda_p": 0.4,
//                   "over_search": true, "under_search": true},
//     "rollout":   {"step_budget": 8, "top_k": 3, "max_chars": 8192,
//                   "mode": "exploratory" | "deterministic"},
//     "retriever": {"corpus": "corpus.jsonl", "k1": 1.2, "b": 0.75},
//     "detection": {"max_retries": 2, "standalone_template": "{query}"},
//     "policy" | "over_search_judge" | "under_search_verifier" | "generator":
//         {"kind": "scripted", "script": "judge.jsonl", "strict": true}
//       | {"kind": "http", "endpoint_url": "...", "model": "...",
//          "api_key_env": "VAR_NAME", "max_retries": 2, "timeout_ms": 60000,
//          "system_prompt": "..."},
//     "concurrency": {"max_in_flight": 4},
//     "seed": 0
//   }
//
// Relative paths resolve against the config file's directory. Credentials are
// only ever read from the environment variable named by api_key_env.

#ifndef STEPRAG_CONFIG_HPP_
#define STEPRAG_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "steprag/detection.hpp"
#include "steprag/io.hpp"
#include "steprag/retriever.hpp"
#include "steprag/rollout.hpp"
#include "steprag/trajectory.hpp"

namespace steprag {

struct BackendSpec {
  enum class Kind { kScripted, kHttp };
  Kind kind = Kind::kScripted;
  std::filesystem::path script;  // kScripted
  bool strict = true;            // kScripted: unknown requests fail
  JudgeEndpointConfig endpoint;  // kHttp
  std::string system_prompt;     // kHttp policy only; empty sends none
};

struct RunConfig {
  RewardConfig reward;
  RolloutConfig rollout;
  std::optional<std::filesystem::path> corpus;
  Bm25Params bm25;
  DetectionOptions detection;
  std::optional<BackendSpec> policy;
  std::optional<BackendSpec> over_search_judge;
  std::optional<BackendSpec> under_search_verifier;
  std::optional<BackendSpec> generator;
  std::uint64_t seed = 0;

  /// Canonical echo of every setting that affects outputs. Credentials never
  /// appear (only the variable names).
  Json to_json() const;
};

/// Throws ConfigError on schema or value problems and on referenced files
/// that do not exist. Unknown keys are rejected.
RunConfig parse_run_config(const Json& j,
                           const std::filesystem::path& base_dir = {});

/// Throws ConfigError when the file is missing or invalid and IoError when it
/// exists but cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

std::unique_ptr<AnswerBackend> make_answer_backend(const BackendSpec& spec);
std::unique_ptr<JudgeBackend> make_judge_backend(const BackendSpec& spec);
std::unique_ptr<GeneratorBackend> make_generator(const BackendSpec& spec);

}  // namespace steprag

#endif  // STEPRAG_CONFIG_HPP_
