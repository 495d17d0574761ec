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

// Answer correctness and the gated hierarchical reward
//
//   R = A (1 - lambda_f) + lambda_f F + lambda_p A F (N_corr / N)
//
// With lambda_p = 0 this is the plain outcome + format reward. The process
// term only contributes when both the answer (A) and the format (F) are
// correct.

#ifndef STEPRAG_REWARD_HPP_
#define STEPRAG_REWARD_HPP_

#include <span>
#include <string>
#include <string_view>

#include "steprag/trajectory.hpp"

namespace steprag {

/// Lowercase, collapse whitespace runs to one space, trim.
std::string normalize_answer(std::string_view text);

/// Cover exact match: 1 iff some normalized golden answer is a substring of
/// the normalized generated answer. Throws EmptyGoldenList.
int cem(std::string_view generated_answer,
        std::span<const std::string> golden_answers);

/// Unjudged labels do not count as optimal.
int count_optimal(std::span<const StepLabel> labels);

/// Throws BoundsViolation unless 0 <= optimal_steps <= steps. The bonus
/// fraction is defined as 0 when steps == 0.
RewardBreakdown hierarchical_reward(int answer_correct, int format_ok,
                                    int steps, int optimal_steps,
                                    const RewardConfig& config);

/// Composes cem, the trajectory's format flag, count_optimal and
/// hierarchical_reward. Throws MissingLabels when a parsed trajectory has no
/// labels and lambda_p > 0.
RewardBreakdown score_trajectory(const EvalRecord& record,
                                 const RewardConfig& config);

}  // namespace steprag

#endif  // STEPRAG_REWARD_HPP_
