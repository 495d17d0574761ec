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

// Data-parallel batch kernels for the trainer hot path. Each kernel has an
// OpenMP version and a serial reference; tests hold them equal element-wise
// and the benchmark compares their throughput.

#ifndef STEPRAG_BATCH_HPP_
#define STEPRAG_BATCH_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steprag/grammar.hpp"
#include "steprag/trajectory.hpp"

namespace steprag {

std::vector<FormatCheck> check_format_batch(std::span<const std::string> texts);
std::vector<FormatCheck> check_format_batch_serial(
    std::span<const std::string> texts);

std::vector<Trajectory> parse_batch(std::span<const std::string> texts);
std::vector<Trajectory> parse_batch_serial(std::span<const std::string> texts);

/// Per-record result; exactly one of reward / error is set. Errors never
/// escape the batch.
struct ScoreOutcome {
  std::optional<RewardBreakdown> reward;
  std::string error;

  friend bool operator==(const ScoreOutcome&, const ScoreOutcome&) = default;
};

std::vector<ScoreOutcome> score_batch(std::span<const EvalRecord> records,
                                      const RewardConfig& config);
std::vector<ScoreOutcome> score_batch_serial(
    std::span<const EvalRecord> records, const RewardConfig& config);

}  // namespace steprag

#endif  // STEPRAG_BATCH_HPP_
