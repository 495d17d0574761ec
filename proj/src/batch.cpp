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

#include "steprag/batch.hpp"

#include <cstddef>
#include <cstdint>

#include "steprag/reward.hpp"

namespace steprag {
namespace {

ScoreOutcome score_one(const EvalRecord& record, const RewardConfig& config) {
  ScoreOutcome out;
  try {
    out.reward = score_trajectory(record, config);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<FormatCheck> check_format_batch(
    std::span<const std::string> texts) {
  std::vector<FormatCheck> out(texts.size());
  const auto n = static_cast<std::int64_t>(texts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        check_format(texts[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<FormatCheck> check_format_batch_serial(
    std::span<const std::string> texts) {
  std::vector<FormatCheck> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(check_format(t));
  return out;
}

std::vector<Trajectory> parse_batch(std::span<const std::string> texts) {
  std::vector<Trajectory> out(texts.size(), Trajectory::unparsable({}, {}));
  const auto n = static_cast<std::int64_t>(texts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = parse_trajectory({}, texts[k]);
  }
  return out;
}

std::vector<Trajectory> parse_batch_serial(std::span<const std::string> texts) {
  std::vector<Trajectory> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_trajectory({}, t));
  return out;
}

std::vector<ScoreOutcome> score_batch(std::span<const EvalRecord> records,
                                      const RewardConfig& config) {
  std::vector<ScoreOutcome> out(records.size());
  const auto n = static_cast<std::int64_t>(records.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = score_one(records[k], config);
  }
  return out;
}

std::vector<ScoreOutcome> score_batch_serial(
    std::span<const EvalRecord> records, const RewardConfig& config) {
  std::vector<ScoreOutcome> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(score_one(r, config));
  return out;
}

}  // namespace steprag
