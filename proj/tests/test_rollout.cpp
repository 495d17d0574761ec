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

#include <functional>

#include "steprag/fixtures.hpp"
#include "steprag/grammar.hpp"
#include "steprag/retriever.hpp"
#include "steprag/rollout.hpp"
#include "support.hpp"

using namespace steprag;

namespace {

// Generator driven by a callback over the request.
class FnGenerator final : public GeneratorBackend {
 public:
  using Fn = std::function<std::string(const GenerationRequest&)>;
  explicit FnGenerator(Fn fn) : fn_(std::move(fn)) {}
  std::string generate(const GenerationRequest& r) override {
    seen.emplace_back(r.transcript);
    return fn_(r);
  }
  std::vector<std::string> seen;

 private:
  Fn fn_;
};

class FixedRetriever final : public RetrieverBackend {
 public:
  std::vector<Passage> retrieve(std::string_view query,
                                std::size_t k) override {
    queries.emplace_back(query);
    ks.push_back(k);
    return {{"T1", "first"}, {"T2", "second"}, {"T3", "third"}};
  }
  std::vector<std::string> queries;
  std::vector<std::size_t> ks;
};

bool answer_only(const GenerationRequest& r) {
  return r.stop_markers.size() == 1;
}

}  // namespace

TEST_SUITE("rollout") {
  TEST_CASE("context formatting") {
    const std::vector<Passage> p = {{"A", "alpha"}, {"B b", "beta"}};
    CHECK(format_context(p) ==
          "Doc 1(Title: \"A\") alpha\nDoc 2(Title: \"B b\") beta");
    CHECK(format_context({}).empty());
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(RolloutConfig(0), ConfigError);
    CHECK_THROWS_AS(RolloutConfig(1, 0), ConfigError);
    CHECK_THROWS_AS(RolloutConfig(1, 1, 0), ConfigError);
    CHECK(RolloutConfig::stop_markers().size() == 3);
  }

  TEST_CASE("worked example reproduces the reference transcript") {
    const CorpusIndex index(
        load_corpus_jsonl(testing::fixture("corpus.jsonl")));
    LexicalRetriever retriever(index);
    auto gen = ScriptedGenerator::from_jsonl(
        testing::fixture("birthplace_generator.jsonl"));
    const std::string question =
        "What is the place of birth of the performer of song Slow Down (Lacy "
        "J. Dalton Song)?";
    const RolloutResult r =
        run_inference(question, gen, retriever,
                      RolloutConfig(8, 1, 8192, SamplingMode::kDeterministic));
    CHECK_FALSE(r.stalled);
    CHECK_FALSE(r.diagnostic);
    CHECK(r.generator_calls == 4);
    CHECK(r.retrieval_calls == 1);
    CHECK(collapse_tag_whitespace(r.transcript) ==
          collapse_tag_whitespace(
              testing::read_file(testing::fixture("birthplace_example.txt"))));
    const Trajectory& t = r.trajectory;
    REQUIRE(t.format_ok());
    CHECK(t.step_count() == 2);
    CHECK(t.search_step_count() == 1);
    CHECK(*t.steps()[1].query() == "Place of birth of Lacy J. Dalton");
    CHECK(t.answer().find("Bloomsburg, Pennsylvania") != std::string::npos);
  }

  TEST_CASE("retrieval receives the last query and top_k") {
    FixedRetriever ret;
    int n = 0;
    FnGenerator gen([&](const GenerationRequest& r) -> std::string {
      if (answer_only(r)) return "done</answer>";
      switch (n++) {
        case 0:
          return "look</reasoning><search>  who wrote it </search>";
        case 1:
          return "found</conclusion>";
        default:
          return "</think><answer>done</answer>";
      }
    });
    const RolloutResult r = run_inference("q", gen, ret, RolloutConfig(4, 2));
    REQUIRE(ret.queries.size() == 1);
    CHECK(ret.queries[0] == "who wrote it");
    CHECK(ret.ks[0] == 2);
    // Over-long retriever output is cut to top_k.
    CHECK(r.transcript.find("Doc 2(Title: \"T2\") second") !=
          std::string::npos);
    CHECK(r.transcript.find("T3") == std::string::npos);
    CHECK(r.trajectory.format_ok());
    CHECK(r.trajectory.step_count() == 1);
    CHECK(gen.seen[1].ends_with("</context><conclusion>"));
  }

  TEST_CASE("budget closes reasoning and asks for an answer") {
    FixedRetriever ret;
    FnGenerator gen([](const GenerationRequest& r) -> std::string {
      if (answer_only(r)) return " final </answer>";
      return "r</reasoning><conclusion>c</conclusion>";
    });
    for (std::size_t budget : {1u, 3u}) {
      const RolloutResult r =
          run_inference("q", gen, ret, RolloutConfig(budget));
      CHECK(r.trajectory.format_ok());
      CHECK(r.trajectory.step_count() == static_cast<int>(budget));
      CHECK(r.trajectory.answer() == "final");
      CHECK(r.transcript.ends_with("</step></think><answer> final </answer>"));
    }
  }

  TEST_CASE("answers inside a step are reported") {
    FixedRetriever ret;
    FnGenerator gen([](const GenerationRequest&) -> std::string {
      return "r</reasoning><answer>x</answer>";
    });
    const RolloutResult r = run_inference("q", gen, ret, RolloutConfig());
    CHECK_FALSE(r.trajectory.format_ok());
    CHECK(r.diagnostic == "answer emitted inside step 1");
    CHECK(r.generator_calls == 1);
  }

  TEST_CASE("stalls yield an unparsable trajectory") {
    FixedRetriever ret;
    FnGenerator quiet(
        [](const GenerationRequest&) { return std::string("no marker"); });
    RolloutResult r = run_inference("q", quiet, ret, RolloutConfig());
    CHECK(r.stalled);
    CHECK_FALSE(r.trajectory.format_ok());
    CHECK(r.trajectory.step_count() == -1);
    CHECK(r.diagnostic->find("without a stop marker") != std::string::npos);

    FnGenerator capped([](const GenerationRequest& req) {
      return std::string(req.max_chars, 'a');
    });
    r = run_inference("q", capped, ret, RolloutConfig(8, 3, 16));
    CHECK(r.stalled);
    CHECK(r.diagnostic->find("16 characters") != std::string::npos);
  }

  TEST_CASE("backend failures propagate") {
    FixedRetriever ret;
    ScriptedGenerator gen;
    gen.fail("q", "down");
    CHECK_THROWS_AS(run_inference("q", gen, ret, RolloutConfig()),
                    BackendUnavailable);
    CHECK_THROWS_AS(run_inference("other", gen, ret, RolloutConfig()),
                    BackendUnavailable);
  }

  TEST_CASE("sampling mode reaches the generator") {
    FixedRetriever ret;
    SamplingMode seen = SamplingMode::kExploratory;
    FnGenerator gen([&](const GenerationRequest& r) -> std::string {
      seen = r.mode;
      return answer_only(r) ? "a</answer>" : "</think><answer>a</answer>";
    });
    run_inference("q", gen, ret,
                  RolloutConfig(2, 1, 100, SamplingMode::kDeterministic));
    CHECK(seen == SamplingMode::kDeterministic);
  }
}
