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

// Shared value types: steps, trajectories, per-step labels, reward
// configuration and breakdown, evaluation records.
//
// Every type here validates its invariants on construction and is immutable
// afterwards, so values can be shared freely between worker threads.

#ifndef STEPRAG_TRAJECTORY_HPP_
#define STEPRAG_TRAJECTORY_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steprag/errors.hpp"

namespace steprag {

enum class StepKind { kSearch, kNonSearch };

std::string_view to_string(StepKind kind);

/// One reasoning step. A search step carries (reasoning, query, context,
/// conclusion); a non-search step carries (reasoning, conclusion). Text is
/// stored trimmed.
class Step {
 public:
  static Step search(int index, std::string_view reasoning,
                     std::string_view query, std::string_view context,
                     std::string_view conclusion);
  static Step non_search(int index, std::string_view reasoning,
                         std::string_view conclusion);

  int index() const { return index_; }
  StepKind kind() const { return kind_; }
  bool is_search() const { return kind_ == StepKind::kSearch; }
  const std::string& reasoning() const { return reasoning_; }
  const std::optional<std::string>& query() const { return query_; }
  const std::optional<std::string>& context() const { return context_; }
  const std::string& conclusion() const { return conclusion_; }

  friend bool operator==(const Step&, const Step&) = default;

 private:
  Step(int index, StepKind kind, std::string reasoning,
       std::optional<std::string> query, std::optional<std::string> context,
       std::string conclusion);

  int index_;
  StepKind kind_;
  std::string reasoning_;
  std::optional<std::string> query_;
  std::optional<std::string> context_;
  std::string conclusion_;
};

/// A question's full structured reasoning. format_ok == false is a
/// first-class value (the "unparsable" sentinel, step_count == -1) because a
/// reward still has to be produced for every rollout.
class Trajectory {
 public:
  /// Throws InconsistentTrajectory when the field combination violates the
  /// format_ok / step_count / steps invariants.
  static Trajectory make(std::string_view question, std::string raw_text,
                         std::vector<Step> steps, std::string_view answer,
                         bool format_ok, int step_count);

  static Trajectory unparsable(std::string_view question, std::string raw_text,
                               std::string_view answer = {});

  const std::string& question() const { return question_; }
  const std::string& raw_text() const { return raw_text_; }
  const std::vector<Step>& steps() const { return steps_; }
  const std::string& answer() const { return answer_; }
  bool format_ok() const { return format_ok_; }
  int step_count() const { return step_count_; }

  std::size_t search_step_count() const;
  std::size_t non_search_step_count() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  Trajectory() = default;

  std::string question_;
  std::string raw_text_;
  std::vector<Step> steps_;
  std::string answer_;
  bool format_ok_ = false;
  int step_count_ = -1;
};

enum class Verdict { kOptimal, kOverSearch, kUnderSearch, kUnjudged };

std::string_view to_string(Verdict verdict);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
Verdict verdict_from_string(std::string_view name);

struct StepLabel {
  Verdict verdict = Verdict::kOptimal;
  std::optional<std::string> reason;     // Unjudged only
  std::optional<std::string> judge_raw;  // verbatim judge output, if any

  static StepLabel optimal(std::optional<std::string> judge_raw = {});
  static StepLabel over_search(std::optional<std::string> judge_raw = {});
  static StepLabel under_search(std::optional<std::string> judge_raw = {});
  static StepLabel unjudged(std::string reason,
                            std::optional<std::string> judge_raw = {});

  friend bool operator==(const StepLabel&, const StepLabel&) = default;
};

/// Throws IncompatibleLabel for OverSearch on a non-search step or
/// UnderSearch on a search step.
void check_label_compatible(const Step& step, const StepLabel& label);

class RewardConfig {
 public:
  static constexpr double kDefaultLambdaF = 0.2;
  static constexpr double kDefaultLambdaP = 0.4;

  /// Throws ConfigError unless lambda_f in [0,1] and lambda_p >= 0.
  explicit RewardConfig(double lambda_f = kDefaultLambdaF,
                        double lambda_p = kDefaultLambdaP,
                        bool over_search_enabled = true,
                        bool under_search_enabled = true);

  double lambda_f() const { return lambda_f_; }
  double lambda_p() const { return lambda_p_; }
  bool over_search_enabled() const { return over_search_enabled_; }
  bool under_search_enabled() const { return under_search_enabled_; }

  friend bool operator==(const RewardConfig&, const RewardConfig&) = default;

 private:
  double lambda_f_;
  double lambda_p_;
  bool over_search_enabled_;
  bool under_search_enabled_;
};

struct RewardBreakdown {
  int answer_correct = 0;  // A
  int format_ok = 0;       // F
  int steps = 0;           // N
  int optimal_steps = 0;   // N_corr
  double bonus_fraction = 0.0;
  double total = 0.0;

  friend bool operator==(const RewardBreakdown&,
                         const RewardBreakdown&) = default;
};

/// The unit of batch evaluation. Labels, when present, are aligned with the
/// trajectory's steps and kind-compatible.
class EvalRecord {
 public:
  /// Throws EmptyGoldenList when golden_answers is empty.
  EvalRecord(std::string id, std::string dataset,
             std::vector<std::string> golden_answers, Trajectory trajectory);

  /// Throws IncompatibleLabel on a length mismatch or kind mismatch.
  EvalRecord with_labels(std::vector<StepLabel> labels) const;
  EvalRecord with_reward(RewardBreakdown reward) const;

  const std::string& id() const { return id_; }
  const std::string& dataset() const { return dataset_; }
  const std::string& question() const { return trajectory_.question(); }
  const std::vector<std::string>& golden_answers() const {
    return golden_answers_;
  }
  const Trajectory& trajectory() const { return trajectory_; }
  const std::optional<std::vector<StepLabel>>& labels() const {
    return labels_;
  }
  const std::optional<RewardBreakdown>& reward() const { return reward_; }

 private:
  std::string id_;
  std::string dataset_;
  std::vector<std::string> golden_answers_;
  Trajectory trajectory_;
  std::optional<std::vector<StepLabel>> labels_;
  std::optional<RewardBreakdown> reward_;
};

}  // namespace steprag

#endif  // STEPRAG_TRAJECTORY_HPP_
