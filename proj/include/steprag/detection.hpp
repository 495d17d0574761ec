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

// Step-level over-search / under-search detection.
//
// Over-search: the step's query is put to the policy as a standalone
// question; if a judge finds the regenerated answer semantically equivalent
// to the step's conclusion, the search was redundant.
//
// Under-search: a verifier checks the factual accuracy and internal logic of
// a non-search step; a failed check means the step should have searched.
//
// Backend failures and unparseable verdicts never abort a batch. They turn
// into Unjudged labels carrying a reason.

#ifndef STEPRAG_DETECTION_HPP_
#define STEPRAG_DETECTION_HPP_

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steprag/trajectory.hpp"

namespace steprag {

enum class JudgeValue { kTrue, kFalse, kUnparseable };

struct JudgeVerdict {
  JudgeValue value = JudgeValue::kUnparseable;
  std::string raw;
};

/// First <answer>..</answer> span, trimmed and compared case-insensitively
/// against "true" / "false".
JudgeVerdict parse_judge_answer(std::string_view raw);

/// One chat exchange: a single system prompt and a single user message.
/// `attempt` is 0 for the first try and increments on each retry.
struct ChatRequest {
  std::string_view system_prompt;
  std::string user_message;
  int attempt = 0;
};

/// Must be safe for concurrent calls. Throws BackendUnavailable on failure.
class JudgeBackend {
 public:
  virtual ~JudgeBackend() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

/// The policy model asked a bare question. Implementations should answer
/// deterministically (most likely answer). Must be safe for concurrent calls.
class AnswerBackend {
 public:
  virtual ~AnswerBackend() = default;
  /// Throws BackendUnavailable on failure.
  virtual std::string answer_standalone(std::string_view question) = 0;
  /// Order-aligned answers; an empty string marks a failed item. The default
  /// fans answer_standalone out over max_in_flight threads.
  virtual std::vector<std::string> answer_batch(
      std::span<const std::string> questions, std::size_t max_in_flight);
};

struct JudgeEndpointConfig {
  std::string endpoint_url;
  std::string model_name;
  std::string api_key_env;  // name of the variable, never the key itself
  int max_retries = 2;
  std::chrono::milliseconds timeout{60000};
  int max_in_flight = 4;

  /// Throws ConfigError on max_in_flight < 1, max_retries < 0 or an empty
  /// endpoint/model.
  void validate() const;
};

inline constexpr std::string_view kDefaultOverSearchJudgeModel = "gpt-4.1-mini";
inline constexpr std::string_view kDefaultUnderSearchVerifierModel =
    "gpt-5-mini";

struct DetectionOptions {
  /// Extra attempts after the first when a verdict is unparseable or the
  /// backend fails.
  int max_retries = 2;
  std::size_t max_in_flight = 4;
  /// How a search query is framed for the policy; "{query}" is replaced.
  std::string standalone_template = "{query}";
};

std::string frame_standalone_question(std::string_view query,
                                      std::string_view tmpl);

/// Precondition: step.is_search(). Throws std::invalid_argument otherwise.
StepLabel detect_over_search(const Step& step, AnswerBackend& policy,
                             JudgeBackend& judge,
                             const DetectionOptions& options = {});

/// Judge half of over-search detection, for a regenerated answer obtained
/// elsewhere (e.g. by batch_regenerate).
StepLabel judge_over_search(const Step& step, std::string_view regenerated,
                            JudgeBackend& judge,
                            const DetectionOptions& options = {});

/// Precondition: !step.is_search(). Throws std::invalid_argument otherwise.
StepLabel detect_under_search(const Step& step, JudgeBackend& verifier,
                              const DetectionOptions& options = {});

/// Standalone answers aligned with `queries`; "" where the policy failed.
std::vector<std::string> batch_regenerate(std::span<const std::string> queries,
                                          AnswerBackend& policy,
                                          std::size_t max_in_flight = 1);

/// One label per step, aligned. Disabled detectors label their steps
/// Optimal. Throws FormatNotOk on an unparsable trajectory.
std::vector<StepLabel> label_trajectory(const Trajectory& trajectory,
                                        AnswerBackend& policy,
                                        JudgeBackend& judge,
                                        JudgeBackend& verifier,
                                        const RewardConfig& config,
                                        const DetectionOptions& options = {});

/// Labels many trajectories at once. Standalone answers for every search
/// step are regenerated first as one batch, then all judge calls fan out
/// over at most options.max_in_flight workers. Unparsable trajectories get
/// an empty label list. Output is independent of scheduling.
std::vector<std::vector<StepLabel>> label_batch(
    std::span<const Trajectory> trajectories, AnswerBackend& policy,
    JudgeBackend& judge, JudgeBackend& verifier, const RewardConfig& config,
    const DetectionOptions& options = {});

}  // namespace steprag

#endif  // STEPRAG_DETECTION_HPP_
