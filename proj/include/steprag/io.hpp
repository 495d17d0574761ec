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

// JSON / JSONL record formats.
//
// Trajectory record:
//   {id, dataset, question, golden_answers, raw_text,
//    [format_ok, step_count, steps, answer], [labels], [reward], ...}
//
// raw_text is canonical. The structured fields are derived from it and are
// regenerated on every write; readers ignore them and re-parse raw_text.

#ifndef STEPRAG_IO_HPP_
#define STEPRAG_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "steprag/metrics.hpp"
#include "steprag/trajectory.hpp"

namespace steprag {

using Json = nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Step& step);
Json to_json(const StepLabel& label);
Json to_json(const RewardBreakdown& reward);
Json to_json(const RewardConfig& config);
Json to_json(const MetricCounts& counts);
Json to_json(const MetricsReport& report);

/// Adds format_ok, step_count, steps and answer to `out`.
void put_trajectory_fields(const Trajectory& trajectory, Json& out);

StepLabel label_from_json(const Json& j);
RewardBreakdown reward_from_json(const Json& j);

/// Builds a record from its JSON form. Throws std::invalid_argument (or a
/// subclass) on missing fields, empty goldens or labels that do not fit.
EvalRecord record_from_json(const Json& j);

/// Serializes every field of the record, including derived ones.
Json record_to_json(const EvalRecord& record);

struct JsonlLine {
  std::size_t line_no = 0;
  std::optional<Json> value;
  std::string error;  // parse error when value is empty
};

/// Reads all non-blank lines; malformed lines are reported, not thrown.
/// Throws IoError when the file cannot be read.
std::vector<JsonlLine> read_jsonl(const std::filesystem::path& path);

/// One compact JSON document per line, keys sorted.
void write_jsonl(std::ostream& out, const std::vector<Json>& lines);

/// Writes to `path`, or to stdout when path is "-". Throws IoError.
void write_jsonl_file(const std::filesystem::path& path,
                      const std::vector<Json>& lines);

/// 64-bit FNV-1a of the compact dump, as 16 lowercase hex digits.
std::string json_fingerprint(const Json& j);
std::string fingerprint(std::string_view text);

}  // namespace steprag

#endif  // STEPRAG_IO_HPP_
