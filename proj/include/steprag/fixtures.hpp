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

// Offline test kit: table-driven backends and grammar generators/mutators.
//
// Script files are JSONL. Judge/policy scripts map a request fingerprint to a
// canned reply:
//   {"key": "<exact user message or query>", "response": "..."}
//   {"hash": "<fingerprint of the user message>", "response": "..."}
//   {"key": "...", "responses": ["first attempt", {"error": "..."}, ...]}
//   {"key": "...", "error": "connection refused"}
//   {"default": "..."}                      (used when not strict)
// Generator scripts replay model output per question:
//   {"question": "...", "segments": ["...</conclusion>", ...]}
//   {"question": "...", "error": "..."}

#ifndef STEPRAG_FIXTURES_HPP_
#define STEPRAG_FIXTURES_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steprag/detection.hpp"
#include "steprag/rollout.hpp"

namespace steprag {

struct ScriptedReply {
  std::string text;
  bool error = false;  // text is the error message
};

/// Deterministic table-driven judge/policy. Replies are picked by attempt
/// index (clamped to the last reply), so retries replay the same way under
/// any scheduling. Unknown fingerprints throw BackendUnavailable in strict
/// mode and return the default reply otherwise.
class ScriptedBackend final : public JudgeBackend, public AnswerBackend {
 public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(bool strict) : strict_(strict) {}
  ScriptedBackend(ScriptedBackend&& other) noexcept;

  static ScriptedBackend from_jsonl(const std::filesystem::path& path,
                                    bool strict = true);

  ScriptedBackend& on(std::string key, std::string response);
  ScriptedBackend& on(std::string key, std::vector<ScriptedReply> replies);
  ScriptedBackend& on_hash(std::string hash,
                           std::vector<ScriptedReply> replies);
  ScriptedBackend& fail(std::string key, std::string message);
  ScriptedBackend& otherwise(std::string response);

  std::string complete(const ChatRequest& request) override;
  std::string answer_standalone(std::string_view question) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  std::string lookup(std::string_view key, int attempt);

  bool strict_ = true;
  std::map<std::string, std::vector<ScriptedReply>, std::less<>> by_key_;
  std::map<std::string, std::vector<ScriptedReply>, std::less<>> by_hash_;
  std::optional<std::string> default_;
  std::atomic<std::size_t> calls_{0};
};

/// Replays per-question segments. The segment index is the number of stop
/// markers already present in the transcript, so the backend is stateless.
/// Past the last segment it returns "" (the driver reports a stall).
class ScriptedGenerator final : public GeneratorBackend {
 public:
  static ScriptedGenerator from_jsonl(const std::filesystem::path& path);

  ScriptedGenerator& script(std::string question,
                            std::vector<std::string> segments);
  ScriptedGenerator& fail(std::string question, std::string message);

  std::string generate(const GenerationRequest& request) override;

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> segments_;
  std::map<std::string, std::string, std::less<>> errors_;
};

/// Small deterministic PRNG (splitmix64) so fixtures do not depend on the
/// standard library's distribution implementations.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

struct GeneratedTrajectory {
  std::string text;
  int steps = 0;
  int search_steps = 0;
};

/// Grammar-conformant trajectory with 1..max_steps steps, random benign
/// content, a random search/non-search mix and random inter-tag whitespace
/// (including CRLF). Deterministic in (seed, max_steps).
GeneratedTrajectory generate_valid_trajectory(std::uint64_t seed,
                                              int max_steps);

enum class Mutation { kDropTag, kDupTag, kSwapOrder, kInjectText };

std::string_view to_string(Mutation m);

/// Applies one mutation at a seed-chosen site. The input must pass the
/// format check; the output never does. The output is in normalized form.
/// Throws NoMutationSite when the mutation cannot apply (including when the
/// input is not well-formed).
std::string mutate_trajectory(std::string_view text, Mutation mutation,
                              std::uint64_t seed);

}  // namespace steprag

#endif  // STEPRAG_FIXTURES_HPP_
