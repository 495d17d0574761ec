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

#include "steprag/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "steprag/text.hpp"

namespace steprag {

std::string_view to_string(StepKind kind) {
  return kind == StepKind::kSearch ? "Search" : "NonSearch";
}

Step::Step(int index, StepKind kind, std::string reasoning,
           std::optional<std::string> query, std::optional<std::string> context,
           std::string conclusion)
    : index_(index),
      kind_(kind),
      reasoning_(std::move(reasoning)),
      query_(std::move(query)),
      context_(std::move(context)),
      conclusion_(std::move(conclusion)) {
  if (index_ < 1) {
    throw InconsistentTrajectory("step index must be 1-based");
  }
}

Step Step::search(int index, std::string_view reasoning, std::string_view query,
                  std::string_view context, std::string_view conclusion) {
  return Step(index, StepKind::kSearch, std::string(trim(reasoning)),
              std::string(trim(query)), std::string(trim(context)),
              std::string(trim(conclusion)));
}

Step Step::non_search(int index, std::string_view reasoning,
                      std::string_view conclusion) {
  return Step(index, StepKind::kNonSearch, std::string(trim(reasoning)),
              std::nullopt, std::nullopt, std::string(trim(conclusion)));
}

Trajectory Trajectory::make(std::string_view question, std::string raw_text,
                            std::vector<Step> steps, std::string_view answer,
                            bool format_ok, int step_count) {
  if (format_ok) {
    if (steps.empty() || step_count != static_cast<int>(steps.size())) {
      throw InconsistentTrajectory(
          "format_ok trajectory needs step_count == |steps| >= 1");
    }
    if (is_blank(answer)) {
      throw InconsistentTrajectory("format_ok trajectory needs an answer");
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (steps[i].index() != static_cast<int>(i) + 1) {
        throw InconsistentTrajectory("step indices must be 1..n in order");
      }
    }
  } else if (step_count != -1 || !steps.empty()) {
    throw InconsistentTrajectory(
        "unparsable trajectory needs step_count == -1 and no steps");
  }
  Trajectory t;
  t.question_ = std::string(trim(question));
  t.raw_text_ = std::move(raw_text);
  t.steps_ = std::move(steps);
  t.answer_ = std::string(trim(answer));
  t.format_ok_ = format_ok;
  t.step_count_ = step_count;
  return t;
}

Trajectory Trajectory::unparsable(std::string_view question,
                                  std::string raw_text,
                                  std::string_view answer) {
  return make(question, std::move(raw_text), {}, answer, false, -1);
}

std::size_t Trajectory::search_step_count() const {
  return static_cast<std::size_t>(
      std::count_if(steps_.begin(), steps_.end(),
                    [](const Step& s) { return s.is_search(); }));
}

std::size_t Trajectory::non_search_step_count() const {
  return steps_.size() - search_step_count();
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kOptimal:
      return "Optimal";
    case Verdict::kOverSearch:
      return "OverSearch";
    case Verdict::kUnderSearch:
      return "UnderSearch";
    case Verdict::kUnjudged:
      return "Unjudged";
  }
  return "Unjudged";
}

Verdict verdict_from_string(std::string_view name) {
  for (Verdict v : {Verdict::kOptimal, Verdict::kOverSearch,
                    Verdict::kUnderSearch, Verdict::kUnjudged}) {
    if (to_string(v) == name) return v;
  }
  throw std::invalid_argument("unknown verdict: " + std::string(name));
}

StepLabel StepLabel::optimal(std::optional<std::string> judge_raw) {
  return {Verdict::kOptimal, std::nullopt, std::move(judge_raw)};
}

StepLabel StepLabel::over_search(std::optional<std::string> judge_raw) {
  return {Verdict::kOverSearch, std::nullopt, std::move(judge_raw)};
}

StepLabel StepLabel::under_search(std::optional<std::string> judge_raw) {
  return {Verdict::kUnderSearch, std::nullopt, std::move(judge_raw)};
}

StepLabel StepLabel::unjudged(std::string reason,
                              std::optional<std::string> judge_raw) {
  return {Verdict::kUnjudged, std::move(reason), std::move(judge_raw)};
}

void check_label_compatible(const Step& step, const StepLabel& label) {
  if (label.verdict == Verdict::kOverSearch && !step.is_search()) {
    throw IncompatibleLabel("OverSearch label on non-search step " +
                            std::to_string(step.index()));
  }
  if (label.verdict == Verdict::kUnderSearch && step.is_search()) {
    throw IncompatibleLabel("UnderSearch label on search step " +
                            std::to_string(step.index()));
  }
  if (label.reason.has_value() != (label.verdict == Verdict::kUnjudged)) {
    throw IncompatibleLabel("reason must be set exactly for Unjudged labels");
  }
}

RewardConfig::RewardConfig(double lambda_f, double lambda_p,
                           bool over_search_enabled, bool under_search_enabled)
    : lambda_f_(lambda_f),
      lambda_p_(lambda_p),
      over_search_enabled_(over_search_enabled),
      under_search_enabled_(under_search_enabled) {
  // Written so that NaN fails both checks.
  if (!(lambda_f >= 0.0 && lambda_f <= 1.0)) {
    throw ConfigError("lambda_f must lie in [0, 1]");
  }
  if (!(lambda_p >= 0.0) || std::isinf(lambda_p)) {
    throw ConfigError("lambda_p must be finite and >= 0");
  }
}

EvalRecord::EvalRecord(std::string id, std::string dataset,
                       std::vector<std::string> golden_answers,
                       Trajectory trajectory)
    : id_(std::move(id)),
      dataset_(std::move(dataset)),
      golden_answers_(std::move(golden_answers)),
      trajectory_(std::move(trajectory)) {
  if (golden_answers_.empty()) throw EmptyGoldenList();
}

EvalRecord EvalRecord::with_labels(std::vector<StepLabel> labels) const {
  const auto& steps = trajectory_.steps();
  if (labels.size() != steps.size()) {
    throw IncompatibleLabel("record " + id_ + ": " +
                            std::to_string(labels.size()) + " labels for " +
                            std::to_string(steps.size()) + " steps");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    check_label_compatible(steps[i], labels[i]);
  }
  EvalRecord out = *this;
  out.labels_ = std::move(labels);
  return out;
}

EvalRecord EvalRecord::with_reward(RewardBreakdown reward) const {
  EvalRecord out = *this;
  out.reward_ = reward;
  return out;
}

}  // namespace steprag
