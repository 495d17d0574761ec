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

// Rollout driver: builds a tagged transcript by alternating generator calls
// (each ending at a stop marker) with retrieval.
//
//   transcript = "<think><step><reasoning>"
//   loop while step <= budget:
//     emit = generate(...) up to </search> | </conclusion> | </answer>
//     </answer>     -> stop
//     </search>     -> retrieve(last query, K), append
//                      "<context>" docs "</context><conclusion>"
//     </conclusion> -> append "</step>"; step++;
//                      open "<step><reasoning>" if step <= budget
//   append "</think>"; if no </answer> yet, append "<answer>" and generate
//   until </answer>
//
// One extension: if the emission right after a fresh "<step><reasoning>"
// opener starts with "</think>", the model is closing its reasoning. The
// opener is withdrawn and "</think>" is not appended a second time.

#ifndef STEPRAG_ROLLOUT_HPP_
#define STEPRAG_ROLLOUT_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steprag/trajectory.hpp"

namespace steprag {

enum class SamplingMode { kExploratory, kDeterministic };

struct GenerationRequest {
  std::string_view system_prompt;
  std::string_view question;
  std::string_view transcript;
  std::span<const std::string_view> stop_markers;
  SamplingMode mode = SamplingMode::kExploratory;
  std::size_t max_chars = 8192;
};

/// Returns the emitted text, ending with the first stop marker reached, or
/// earlier when the character cap is hit. Throws BackendUnavailable.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  virtual std::string generate(const GenerationRequest& request) = 0;
};

struct Passage {
  std::string title;
  std::string body;
};

/// Ranked passages, at most k. Throws BackendUnavailable.
class RetrieverBackend {
 public:
  virtual ~RetrieverBackend() = default;
  virtual std::vector<Passage> retrieve(std::string_view query,
                                        std::size_t k) = 0;
};

class RolloutConfig {
 public:
  static constexpr std::size_t kDefaultBudget = 8;
  static constexpr std::size_t kDefaultTopK = 3;
  static constexpr std::size_t kDefaultMaxChars = 8192;

  /// Throws ConfigError when any value is zero.
  explicit RolloutConfig(std::size_t step_budget = kDefaultBudget,
                         std::size_t top_k = kDefaultTopK,
                         std::size_t max_chars = kDefaultMaxChars,
                         SamplingMode mode = SamplingMode::kExploratory);

  std::size_t step_budget() const { return step_budget_; }
  std::size_t top_k() const { return top_k_; }
  std::size_t max_chars() const { return max_chars_; }
  SamplingMode mode() const { return mode_; }

  static std::span<const std::string_view> stop_markers();

 private:
  std::size_t step_budget_;
  std::size_t top_k_;
  std::size_t max_chars_;
  SamplingMode mode_;
};

struct RolloutResult {
  Trajectory trajectory;
  std::string transcript;
  /// Set when the trajectory came back unparsable or the generator stalled.
  std::optional<std::string> diagnostic;
  bool stalled = false;
  std::size_t generator_calls = 0;
  std::size_t retrieval_calls = 0;
};

/// `Doc i(Title: "<title>") <body>` per passage, rank order, one per line.
std::string format_context(std::span<const Passage> passages);

/// Throws BackendUnavailable if a backend fails; a stalled generator is not an
/// error (see RolloutResult::stalled).
RolloutResult run_inference(std::string_view question,
                            GeneratorBackend& generator,
                            RetrieverBackend& retriever,
                            const RolloutConfig& config);

}  // namespace steprag

#endif  // STEPRAG_ROLLOUT_HPP_
