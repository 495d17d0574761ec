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

#include "steprag/reward.hpp"

#include <algorithm>
#include <cctype>

#include "steprag/text.hpp"

namespace steprag {

std::string normalize_answer(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c) || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

int cem(std::string_view generated_answer,
        std::span<const std::string> golden_answers) {
  if (golden_answers.empty()) throw EmptyGoldenList();
  const std::string generated = normalize_answer(generated_answer);
  for (const auto& golden : golden_answers) {
    const std::string g = normalize_answer(golden);
    // An all-whitespace golden would match everything; treat it as no match.
    if (!g.empty() && generated.find(g) != std::string::npos) return 1;
  }
  return 0;
}

int count_optimal(std::span<const StepLabel> labels) {
  return static_cast<int>(std::count_if(
      labels.begin(), labels.end(),
      [](const StepLabel& l) { return l.verdict == Verdict::kOptimal; }));
}

RewardBreakdown hierarchical_reward(int answer_correct, int format_ok,
                                    int steps, int optimal_steps,
                                    const RewardConfig& config) {
  if ((answer_correct != 0 && answer_correct != 1) ||
      (format_ok != 0 && format_ok != 1)) {
    throw BoundsViolation("A and F must be 0 or 1");
  }
  if (steps < 0 || optimal_steps < 0 || optimal_steps > steps) {
    throw BoundsViolation(
        "need 0 <= N_corr <= N, got N_corr=" + std::to_string(optimal_steps) +
        " N=" + std::to_string(steps));
  }
  RewardBreakdown r;
  r.answer_correct = answer_correct;
  r.format_ok = format_ok;
  r.steps = steps;
  r.optimal_steps = optimal_steps;
  r.bonus_fraction = steps > 0 ? static_cast<double>(optimal_steps) /
                                     static_cast<double>(steps)
                               : 0.0;
  const double a = answer_correct;
  const double f = format_ok;
  const double lf = config.lambda_f();
  const double lp = config.lambda_p();
  r.total = a * (1.0 - lf) + lf * f + lp * a * f * r.bonus_fraction;
  return r;
}

RewardBreakdown score_trajectory(const EvalRecord& record,
                                 const RewardConfig& config) {
  const Trajectory& t = record.trajectory();
  const int a = cem(t.answer(), record.golden_answers());
  const int f = t.format_ok() ? 1 : 0;
  const int n = t.format_ok() ? t.step_count() : 0;
  int n_corr = 0;
  if (record.labels()) {
    n_corr = count_optimal(*record.labels());
  } else if (t.format_ok() && config.lambda_p() > 0.0) {
    throw MissingLabels("record " + record.id() +
                        " has no step labels and lambda_p > 0");
  }
  return hierarchical_reward(a, f, n, n_corr, config);
}

}  // namespace steprag
