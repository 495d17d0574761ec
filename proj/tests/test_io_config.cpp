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

#include <doctest.h>

#include <sstream>

#include "steprag/config.hpp"
#include "steprag/grammar.hpp"
#include "steprag/io.hpp"
#include "support.hpp"

using namespace steprag;

namespace {

const std::string kText =
    "<think><step><reasoning>r</reasoning><search>q</search>"
    "<context>c</context><conclusion>o</conclusion></step></think>"
    "<answer>Paris</answer>";

RunConfig parse(const std::string& text) {
  return parse_run_config(Json::parse(text), STEPRAG_FIXTURE_DIR);
}

}  // namespace

TEST_SUITE("io_config") {
  TEST_CASE("records round-trip") {
    const EvalRecord r =
        EvalRecord("id1", "nq", {"paris", "Paris, France"},
                   parse_trajectory("where?", kText))
            .with_labels({StepLabel::unjudged("judge unavailable: x", "raw")})
            .with_reward(RewardBreakdown{1, 1, 1, 0, 0.0, 1.0});
    const Json j = record_to_json(r);
    CHECK(j["format_ok"] == true);
    CHECK(j["step_count"] == 1);
    CHECK(j["steps"][0]["query"] == "q");
    CHECK(j["labels"][0]["verdict"] == "Unjudged");
    const EvalRecord back = record_from_json(Json::parse(j.dump()));
    CHECK(back.id() == r.id());
    CHECK(back.dataset() == r.dataset());
    CHECK(back.golden_answers() == r.golden_answers());
    CHECK(back.trajectory() == r.trajectory());
    CHECK(back.labels() == r.labels());
    CHECK(back.reward() == r.reward());
    CHECK(record_to_json(back) == j);
  }

  TEST_CASE("raw_text is canonical") {
    Json j = {{"id", "x"},
              {"golden_answers", {"a"}},
              {"raw_text", kText},
              {"format_ok", false},
              {"step_count", 7}};
    const EvalRecord r = record_from_json(j);
    CHECK(r.trajectory().format_ok());
    CHECK(r.trajectory().step_count() == 1);
    CHECK(r.dataset() == "default");
  }

  TEST_CASE("bad records") {
    CHECK_THROWS_AS(record_from_json({{"id", "x"}, {"golden_answers", {"a"}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(record_from_json({{"id", "x"},
                                      {"golden_answers", Json::array()},
                                      {"raw_text", kText}}),
                    EmptyGoldenList);
    CHECK_THROWS_AS(
        record_from_json({{"id", "x"},
                          {"golden_answers", {"a"}},
                          {"raw_text", kText},
                          {"labels", {{{"verdict", "UnderSearch"}}}}}),
        IncompatibleLabel);
    CHECK_THROWS_AS(label_from_json({{"verdict", "Maybe"}}),
                    std::invalid_argument);
  }

  TEST_CASE("jsonl reading reports bad lines") {
    testing::TempDir dir;
    testing::write_file(dir / "in.jsonl",
                        "{\"a\":1}\n\n[1,2]\n{oops\n{\"b\":2}\n");
    const auto lines = read_jsonl(dir / "in.jsonl");
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].line_no == 1);
    CHECK(lines[1].line_no == 3);
    CHECK_FALSE(lines[1].value);
    CHECK_FALSE(lines[2].value);
    CHECK_FALSE(lines[2].error.empty());
    CHECK((*lines[3].value)["b"] == 2);
    CHECK_THROWS_AS(read_jsonl(dir / "missing.jsonl"), IoError);
    CHECK_THROWS_AS(write_jsonl_file(dir / "no" / "such" / "dir.jsonl", {}),
                    IoError);
  }

  TEST_CASE("jsonl writing sorts keys") {
    std::ostringstream out;
    write_jsonl(out, {Json{{"b", 1}, {"a", 2}}, Json{{"c", "x"}}});
    CHECK(out.str() == "{\"a\":2,\"b\":1}\n{\"c\":\"x\"}\n");
  }

  TEST_CASE("fingerprints") {
    CHECK(fingerprint("") == "cbf29ce484222325");
    CHECK(fingerprint("a") == "af63dc4c8601ec8c");
    CHECK(json_fingerprint(Json{{"b", 1}, {"a", 2}}) ==
          fingerprint("{\"a\":2,\"b\":1}"));
  }

  TEST_CASE("fixture config loads") {
    const RunConfig c = load_run_config(testing::fixture("config.json"));
    CHECK(c.reward == RewardConfig(0.2, 0.4));
    CHECK(c.rollout.top_k() == 1);
    CHECK(c.rollout.mode() == SamplingMode::kDeterministic);
    CHECK(c.detection.max_in_flight == 4);
    CHECK(c.seed == 7);
    REQUIRE(c.corpus);
    CHECK(std::filesystem::exists(*c.corpus));
    REQUIRE(c.generator);
    CHECK(c.generator->kind == BackendSpec::Kind::kScripted);
    const Json echo = c.to_json();
    CHECK(echo["retriever"]["corpus"] == "corpus.jsonl");
    CHECK(echo["policy"]["script"] == "policy_script.jsonl");
  }

  TEST_CASE("defaults") {
    const RunConfig c = parse("{}");
    CHECK(c.reward.lambda_f() == 0.2);
    CHECK(c.reward.lambda_p() == 0.4);
    CHECK(c.rollout.step_budget() == RolloutConfig::kDefaultBudget);
    CHECK(c.detection.max_retries == 2);
    CHECK_FALSE(c.policy);
  }

  TEST_CASE("http judges take default models and env var names") {
    const RunConfig c = parse(R"({
      "over_search_judge": {"kind": "http",
        "endpoint_url": "http://127.0.0.1:9/v1/chat/completions",
        "api_key_env": "JUDGE_KEY"},
      "under_search_verifier": {"kind": "http",
        "endpoint_url": "http://127.0.0.1:9/v1/chat/completions"}})");
    CHECK(c.over_search_judge->endpoint.model_name == "gpt-4.1-mini");
    CHECK(c.under_search_verifier->endpoint.model_name == "gpt-5-mini");
    CHECK(c.over_search_judge->endpoint.api_key_env == "JUDGE_KEY");
    CHECK(c.to_json()["over_search_judge"]["api_key_env"] == "JUDGE_KEY");
  }

  TEST_CASE("invalid configs") {
    const char* bad[] = {
        R"({"rewards": {}})",
        R"({"reward": {"lambda_f": 1.5}})",
        R"({"reward": {"lambda_p": -1}})",
        R"({"reward": {"lambda_f": "high"}})",
        R"({"reward": {"extra": 1}})",
        R"({"rollout": {"top_k": 0}})",
        R"({"rollout": {"step_budget": -2}})",
        R"({"rollout": {"mode": "greedy"}})",
        R"({"retriever": {"corpus": "missing.jsonl"}})",
        R"({"retriever": {"b": 2}})",
        R"({"detection": {"max_retries": -1}})",
        R"({"detection": {"standalone_template": "no slot"}})",
        R"({"concurrency": {"max_in_flight": 0}})",
        R"({"policy": {"kind": "scripted"}})",
        R"({"policy": {"kind": "grpc"}})",
        R"({"over_search_judge": {"kind": "http"}})",
        R"({"seed": -1})",
    };
    for (const char* text : bad) {
      CAPTURE(text);
      CHECK_THROWS_AS(parse(text), ConfigError);
    }
  }

  TEST_CASE("config files") {
    testing::TempDir dir;
    CHECK_THROWS_AS(load_run_config(dir / "none.json"), ConfigError);
    testing::write_file(dir / "broken.json", "{");
    CHECK_THROWS_AS(load_run_config(dir / "broken.json"), ConfigError);
    testing::write_file(dir / "local.jsonl",
                        "{\"key\":\"q\",\"response\":\"a\"}\n");
    testing::write_file(
        dir / "c.json",
        R"({"policy": {"kind": "scripted", "script": "local.jsonl"}})");
    const RunConfig c = load_run_config(dir / "c.json");
    auto policy = make_answer_backend(*c.policy);
    CHECK(policy->answer_standalone("q") == "a");
    CHECK_THROWS_AS(policy->answer_standalone("other"), BackendUnavailable);
  }
}
