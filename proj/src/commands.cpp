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

#include "steprag/commands.hpp"

#include <cstdio>
#include <sstream>

#include "steprag/batch.hpp"
#include "steprag/concurrency.hpp"
#include "steprag/errors.hpp"
#include "steprag/fixtures.hpp"
#include "steprag/grammar.hpp"
#include "steprag/metrics.hpp"
#include "steprag/reward.hpp"

namespace steprag {
namespace {

// Stand-in for a detector backend that is disabled by the run config.
class NotConfigured final : public JudgeBackend, public AnswerBackend {
 public:
  std::string complete(const ChatRequest&) override {
    throw BackendUnavailable("backend not configured");
  }
  std::string answer_standalone(std::string_view) override {
    throw BackendUnavailable("backend not configured");
  }
};

Json line_error(const JsonlLine& line, std::string message) {
  Json j = {{"line", line.line_no}, {"error", std::move(message)}};
  if (line.value && line.value->contains("id")) j["id"] = (*line.value)["id"];
  return j;
}

Json id_of(const Json& j) { return j.contains("id") ? j["id"] : Json(nullptr); }

// Parses one input line into a record, or fills `error`.
std::optional<EvalRecord> parse_record(const JsonlLine& line,
                                       const GoldenTable* goldens,
                                       std::string& error) {
  if (!line.value) {
    error = "malformed JSON: " + line.error;
    return std::nullopt;
  }
  try {
    if (goldens) {
      Json j = *line.value;
      const auto id = j.at("id").get<std::string>();
      if (auto it = goldens->find(id); it != goldens->end()) {
        j["golden_answers"] = it->second;
      }
      return record_from_json(j);
    }
    return record_from_json(*line.value);
  } catch (const std::exception& e) {
    error = e.what();
    return std::nullopt;
  }
}

std::string backend_name(const std::optional<BackendSpec>& spec) {
  if (!spec) return "none";
  if (spec->kind == BackendSpec::Kind::kScripted) {
    return "scripted:" + spec->script.filename().string();
  }
  return spec->endpoint.model_name;
}

GoldenTable load_goldens(const std::filesystem::path& path) {
  GoldenTable table;
  for (const auto& line : read_jsonl(path)) {
    try {
      if (!line.value) throw std::invalid_argument(line.error);
      table[line.value->at("id").get<std::string>()] =
          line.value->at("golden_answers").get<std::vector<std::string>>();
    } catch (const std::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(line.line_no) + ": " +
                    e.what());
    }
  }
  return table;
}

}  // namespace

RunConfig resolve_config(const CommandOptions& o) {
  RunConfig c;
  if (o.config) c = load_run_config(*o.config);
  if (o.over_search_only && o.under_search_only) {
    throw ConfigError("--over-search-only and --under-search-only conflict");
  }
  bool over = c.reward.over_search_enabled();
  bool under = c.reward.under_search_enabled();
  if (o.over_search_only) {
    over = true;
    under = false;
  }
  if (o.under_search_only) {
    over = false;
    under = true;
  }
  c.reward =
      RewardConfig(o.lambda_f.value_or(c.reward.lambda_f()),
                   o.lambda_p.value_or(c.reward.lambda_p()), over, under);
  c.rollout = RolloutConfig(o.budget.value_or(c.rollout.step_budget()),
                            o.top_k.value_or(c.rollout.top_k()),
                            c.rollout.max_chars(), c.rollout.mode());
  if (o.max_in_flight) {
    if (*o.max_in_flight < 1) throw ConfigError("--max-in-flight must be >= 1");
    c.detection.max_in_flight = *o.max_in_flight;
    for (auto* spec : {&c.policy, &c.over_search_judge,
                       &c.under_search_verifier, &c.generator}) {
      if (*spec)
        (*spec)->endpoint.max_in_flight = static_cast<int>(*o.max_in_flight);
    }
  }
  if (o.seed) c.seed = *o.seed;
  return c;
}

StageOutput validate_records(std::span<const JsonlLine> lines) {
  StageOutput out;
  for (const auto& line : lines) {
    Json rec = {{"line", line.line_no}, {"F", 0}, {"N", -1}};
    if (!line.value) {
      rec["id"] = nullptr;
      rec["diagnostic"] = "malformed JSON: " + line.error;
      out.any_failure = true;
      out.records.push_back(std::move(rec));
      continue;
    }
    rec["id"] = id_of(*line.value);
    const auto raw = line.value->find("raw_text");
    if (raw == line.value->end() || !raw->is_string()) {
      rec["diagnostic"] = "missing string field raw_text";
      out.any_failure = true;
      out.records.push_back(std::move(rec));
      continue;
    }
    const FormatDiagnostic d = diagnose_format(raw->get<std::string>());
    rec["F"] = d.result.format;
    rec["N"] = d.result.steps;
    if (d.result.format == 0) {
      rec["diagnostic"] = d.message();
      out.any_failure = true;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

StageOutput rollout_records(std::span<const JsonlLine> lines,
                            GeneratorBackend& generator,
                            RetrieverBackend& retriever,
                            const RunConfig& config) {
  StageOutput out;
  out.records.resize(lines.size());
  std::vector<char> failed(lines.size(), 0);
  bounded_parallel_for(
      lines.size(), config.detection.max_in_flight, [&](std::size_t i) {
        const JsonlLine& line = lines[i];
        if (!line.value) {
          out.records[i] = line_error(line, "malformed JSON: " + line.error);
          failed[i] = 1;
          return;
        }
        const Json& in = *line.value;
        Json rec = {{"id", id_of(in)},
                    {"dataset", in.value("dataset", std::string("default"))}};
        try {
          const auto question = in.at("question").get<std::string>();
          rec["question"] = question;
          if (in.contains("golden_answers")) {
            rec["golden_answers"] = in["golden_answers"];
          }
          RolloutResult r =
              run_inference(question, generator, retriever, config.rollout);
          rec["raw_text"] = r.trajectory.raw_text();
          put_trajectory_fields(r.trajectory, rec);
          rec["rollout"] = {{"stalled", r.stalled},
                            {"diagnostic", r.diagnostic ? Json(*r.diagnostic)
                                                        : Json(nullptr)},
                            {"generator_calls", r.generator_calls},
                            {"retrieval_calls", r.retrieval_calls},
                            {"seed", config.seed}};
        } catch (const std::exception& e) {
          rec["error"] = e.what();
          failed[i] = 1;
        }
        out.records[i] = std::move(rec);
      });
  for (char f : failed) out.any_failure = out.any_failure || f;
  return out;
}

StageOutput detect_records(std::span<const JsonlLine> lines,
                           AnswerBackend& policy, JudgeBackend& judge,
                           JudgeBackend& verifier, const RunConfig& config) {
  StageOutput out;
  std::vector<std::optional<EvalRecord>> records;
  std::vector<std::string> errors(lines.size());
  std::vector<Trajectory> trajectories;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    records.push_back(parse_record(lines[i], nullptr, errors[i]));
    if (records.back()) trajectories.push_back(records.back()->trajectory());
  }
  const auto labels = label_batch(trajectories, policy, judge, verifier,
                                  config.reward, config.detection);
  const Json detection = {
      {"over_search", config.reward.over_search_enabled()},
      {"under_search", config.reward.under_search_enabled()}};
  std::size_t k = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!records[i]) {
      out.records.push_back(line_error(lines[i], errors[i]));
      out.any_failure = true;
      continue;
    }
    const EvalRecord labeled = records[i]->with_labels(labels[k++]);
    Json rec = record_to_json(labeled);
    rec["detection"] = detection;
    if (!labeled.trajectory().format_ok()) {
      rec["note"] = "format check failed; steps not labeled";
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

StageOutput score_records(std::span<const JsonlLine> lines,
                          const RunConfig& config, const GoldenTable* goldens) {
  StageOutput out;
  std::vector<EvalRecord> parsed;
  std::vector<std::optional<std::size_t>> slot(lines.size());
  std::vector<std::string> errors(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (auto r = parse_record(lines[i], goldens, errors[i])) {
      slot[i] = parsed.size();
      parsed.push_back(std::move(*r));
    }
  }
  const auto scores = score_batch(parsed, config.reward);
  const Json echo = to_json(config.reward);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!slot[i]) {
      out.records.push_back(line_error(lines[i], errors[i]));
      out.any_failure = true;
      continue;
    }
    const EvalRecord& record = parsed[*slot[i]];
    const ScoreOutcome& s = scores[*slot[i]];
    Json rec =
        record_to_json(s.reward ? record.with_reward(*s.reward) : record);
    if (!s.reward) {
      rec["error"] = s.error;
      out.any_failure = true;
    }
    rec["config"] = echo;
    out.records.push_back(std::move(rec));
  }
  return out;
}

Json config_fingerprint(const RunConfig& config) {
  Json j = {
      {"reward", to_json(config.reward)},
      {"policy", backend_name(config.policy)},
      {"over_search_judge", backend_name(config.over_search_judge)},
      {"under_search_verifier", backend_name(config.under_search_verifier)},
      {"retriever", {{"k1", config.bm25.k1}, {"b", config.bm25.b}}}};
  j["hash"] = json_fingerprint(j);
  return j;
}

ReportOutput report_records(std::span<const JsonlLine> lines,
                            const RunConfig& config) {
  std::vector<EvalRecord> records;
  Json skipped = Json::array();
  for (const auto& line : lines) {
    std::string error;
    if (auto r = parse_record(line, nullptr, error)) {
      records.push_back(std::move(*r));
    } else {
      skipped.push_back(line_error(line, error));
    }
  }
  ReportOutput out;
  out.report = aggregate_report(records);
  const Json cfg = config_fingerprint(config);
  out.record = to_json(out.report);
  out.record["config"] = cfg;
  out.record["skipped"] = skipped;

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "config %s: lambda_f=%g lambda_p=%g over_search_judge=%s "
                "under_search_verifier=%s bm25 k1=%g b=%g\n",
                cfg["hash"].get<std::string>().c_str(),
                config.reward.lambda_f(), config.reward.lambda_p(),
                cfg["over_search_judge"].get<std::string>().c_str(),
                cfg["under_search_verifier"].get<std::string>().c_str(),
                config.bm25.k1, config.bm25.b);
  out.table = render_table(out.report) + buf;
  if (!skipped.empty()) {
    out.table += std::to_string(skipped.size()) + " input line(s) skipped\n";
  }
  return out;
}

StageOutput generate_records(std::uint64_t seed, std::size_t count,
                             int max_steps) {
  StageOutput out;
  FixtureRng seeds(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seeds.next();
    GeneratedTrajectory g = generate_valid_trajectory(s, max_steps);
    char id[32];
    std::snprintf(id, sizeof id, "gen-%06zu", i + 1);
    out.records.push_back({{"id", id},
                           {"dataset", "generated"},
                           {"question", ""},
                           {"golden_answers", {loose_answer(g.text)}},
                           {"raw_text", g.text},
                           {"expected_steps", g.steps},
                           {"expected_search_steps", g.search_steps},
                           {"seed", seed}});
  }
  return out;
}

int run_command(std::string_view name, const CommandOptions& o,
                std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = resolve_config(o);
    if (name == "generate") {
      const auto result = generate_records(config.seed, o.count, o.max_steps);
      write_jsonl_file(o.output, result.records);
      return exit_code::kOk;
    }
    if (o.input.empty()) throw ConfigError("--input is required");
    const auto lines = read_jsonl(o.input);
    for (const auto& line : lines) {
      if (!line.value) {
        err << o.input.string() << ":" << line.line_no
            << ": malformed line: " << line.error << '\n';
      }
    }

    StageOutput result;
    if (name == "validate") {
      result = validate_records(lines);
      write_jsonl_file(o.output, result.records);
      return o.strict && result.any_failure ? exit_code::kValidationFailed
                                            : exit_code::kOk;
    }
    if (name == "rollout") {
      if (!config.generator) throw ConfigError("rollout needs a generator");
      if (!config.corpus) throw ConfigError("rollout needs retriever.corpus");
      std::vector<Document> docs;
      try {
        docs = load_corpus_jsonl(*config.corpus);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw IoError(e.what());
      }
      const CorpusIndex index(std::move(docs), config.bm25);
      LexicalRetriever retriever(index);
      auto generator = make_generator(*config.generator);
      result = rollout_records(lines, *generator, retriever, config);
    } else if (name == "detect") {
      const bool over = config.reward.over_search_enabled();
      const bool under = config.reward.under_search_enabled();
      if (over && (!config.policy || !config.over_search_judge)) {
        throw ConfigError(
            "over-search detection needs policy and "
            "over_search_judge");
      }
      if (under && !config.under_search_verifier) {
        throw ConfigError("under-search detection needs under_search_verifier");
      }
      NotConfigured none;
      std::unique_ptr<AnswerBackend> policy;
      std::unique_ptr<JudgeBackend> judge;
      std::unique_ptr<JudgeBackend> verifier;
      if (over) {
        policy = make_answer_backend(*config.policy);
        judge = make_judge_backend(*config.over_search_judge);
      }
      if (under) verifier = make_judge_backend(*config.under_search_verifier);
      result =
          detect_records(lines, policy ? *policy : none, judge ? *judge : none,
                         verifier ? *verifier : none, config);
    } else if (name == "score") {
      std::optional<GoldenTable> goldens;
      if (o.goldens) goldens = load_goldens(*o.goldens);
      result = score_records(lines, config, goldens ? &*goldens : nullptr);
    } else if (name == "report") {
      const ReportOutput report = report_records(lines, config);
      write_jsonl_file(o.output, {report.record});
      (o.output == "-" ? err : out) << report.table;
      return exit_code::kOk;
    } else {
      throw ConfigError("unknown command " + std::string(name));
    }
    write_jsonl_file(o.output, result.records);
    for (const auto& rec : result.records) {
      if (rec.contains("error")) {
        err << "record " << rec.value("id", Json(nullptr)).dump() << ": "
            << rec["error"].get<std::string>() << '\n';
      }
    }
    return exit_code::kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_code::kConfigError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return exit_code::kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return exit_code::kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kIoError;
  }
}

}  // namespace steprag
