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

#include "steprag/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "steprag/grammar.hpp"

namespace steprag {

Json to_json(const Step& step) {
  Json j = {{"index", step.index()},
            {"kind", to_string(step.kind())},
            {"reasoning", step.reasoning()},
            {"conclusion", step.conclusion()}};
  if (step.query()) j["query"] = *step.query();
  if (step.context()) j["context"] = *step.context();
  return j;
}

Json to_json(const StepLabel& label) {
  Json j = {{"verdict", to_string(label.verdict)}};
  if (label.reason) j["reason"] = *label.reason;
  if (label.judge_raw) j["judge_raw"] = *label.judge_raw;
  return j;
}

Json to_json(const RewardBreakdown& r) {
  return {{"A", r.answer_correct},
          {"F", r.format_ok},
          {"N", r.steps},
          {"N_corr", r.optimal_steps},
          {"bonus_fraction", r.bonus_fraction},
          {"total", r.total}};
}

Json to_json(const RewardConfig& c) {
  return {{"lambda_f", c.lambda_f()},
          {"lambda_p", c.lambda_p()},
          {"over_search_enabled", c.over_search_enabled()},
          {"under_search_enabled", c.under_search_enabled()}};
}

Json to_json(const MetricCounts& c) {
  return {{"records", c.records},
          {"parsed", c.parsed},
          {"correct", c.correct},
          {"search_steps", c.search_steps},
          {"non_search_steps", c.non_search_steps},
          {"flagged_over", c.flagged_over},
          {"flagged_under", c.flagged_under},
          {"unjudged", c.unjudged},
          {"cem_rate", c.cem_rate()},
          {"osr", c.osr()},
          {"usr", c.usr()}};
}

Json to_json(const MetricsReport& report) {
  Json datasets = Json::array();
  for (const auto& row : report.datasets) {
    Json r = to_json(row.counts);
    r["dataset"] = row.dataset;
    datasets.push_back(std::move(r));
  }
  const RateTriple macro = report.macro();
  return {{"datasets", datasets},
          {"overall_micro", to_json(report.overall)},
          {"overall_macro",
           {{"cem_rate", macro.cem_rate},
            {"osr", macro.osr},
            {"usr", macro.usr},
            {"datasets", report.datasets.size()}}}};
}

void put_trajectory_fields(const Trajectory& t, Json& out) {
  out["format_ok"] = t.format_ok();
  out["step_count"] = t.step_count();
  out["answer"] = t.answer();
  Json steps = Json::array();
  for (const auto& s : t.steps()) steps.push_back(to_json(s));
  out["steps"] = std::move(steps);
}

StepLabel label_from_json(const Json& j) {
  StepLabel label;
  label.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (j.contains("reason") && !j["reason"].is_null()) {
    label.reason = j["reason"].get<std::string>();
  }
  if (j.contains("judge_raw") && !j["judge_raw"].is_null()) {
    label.judge_raw = j["judge_raw"].get<std::string>();
  }
  return label;
}

RewardBreakdown reward_from_json(const Json& j) {
  RewardBreakdown r;
  r.answer_correct = j.at("A").get<int>();
  r.format_ok = j.at("F").get<int>();
  r.steps = j.at("N").get<int>();
  r.optimal_steps = j.at("N_corr").get<int>();
  r.bonus_fraction = j.at("bonus_fraction").get<double>();
  r.total = j.at("total").get<double>();
  return r;
}

EvalRecord record_from_json(const Json& j) {
  try {
    const std::string question = j.value("question", std::string());
    Trajectory trajectory =
        parse_trajectory(question, j.at("raw_text").get<std::string>());
    EvalRecord record(j.at("id").get<std::string>(),
                      j.value("dataset", std::string("default")),
                      j.at("golden_answers").get<std::vector<std::string>>(),
                      std::move(trajectory));
    if (j.contains("labels") && !j["labels"].is_null()) {
      std::vector<StepLabel> labels;
      for (const auto& l : j["labels"]) labels.push_back(label_from_json(l));
      record = record.with_labels(std::move(labels));
    }
    if (j.contains("reward") && !j["reward"].is_null()) {
      record = record.with_reward(reward_from_json(j["reward"]));
    }
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad record: ") + e.what());
  }
}

Json record_to_json(const EvalRecord& record) {
  Json j = {{"id", record.id()},
            {"dataset", record.dataset()},
            {"question", record.question()},
            {"golden_answers", record.golden_answers()},
            {"raw_text", record.trajectory().raw_text()}};
  put_trajectory_fields(record.trajectory(), j);
  if (record.labels()) {
    Json labels = Json::array();
    for (const auto& l : *record.labels()) labels.push_back(to_json(l));
    j["labels"] = std::move(labels);
  }
  if (record.reward()) j["reward"] = to_json(*record.reward());
  return j;
}

std::vector<JsonlLine> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<JsonlLine> lines;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    JsonlLine line;
    line.line_no = line_no;
    try {
      line.value = Json::parse(text);
      if (!line.value->is_object()) {
        line.value.reset();
        line.error = "line is not a JSON object";
      }
    } catch (const nlohmann::json::exception& e) {
      line.error = e.what();
    }
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("error while reading " + path.string());
  return lines;
}

void write_jsonl(std::ostream& out, const std::vector<Json>& lines) {
  for (const auto& line : lines) out << line.dump() << '\n';
}

void write_jsonl_file(const std::filesystem::path& path,
                      const std::vector<Json>& lines) {
  if (path == "-") {
    write_jsonl(std::cout, lines);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_jsonl(out, lines);
  if (!out) throw IoError("error while writing " + path.string());
}

std::string fingerprint(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string json_fingerprint(const Json& j) {
  return fingerprint(std::string_view(j.dump()));
}

}  // namespace steprag
