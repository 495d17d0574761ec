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

#include "steprag/batch.hpp"
#include "steprag/fixtures.hpp"
#include "steprag/grammar.hpp"

using namespace steprag;

namespace {

std::vector<std::string> corpus(std::size_t n) {
  std::vector<std::string> texts;
  constexpr Mutation kAll[] = {Mutation::kDropTag, Mutation::kDupTag,
                               Mutation::kSwapOrder, Mutation::kInjectText};
  for (std::size_t i = 0; i < n; ++i) {
    std::string t = generate_valid_trajectory(i, 6).text;
    if (i % 3 == 1) {
      try {
        t = mutate_trajectory(t, kAll[i % 4], i);
      } catch (const NoMutationSite&) {
      }
    }
    texts.push_back(std::move(t));
  }
  texts.emplace_back();
  texts.emplace_back("<think></think>");
  return texts;
}

}  // namespace

TEST_SUITE("batch") {
  TEST_CASE("format check kernels agree") {
    const auto texts = corpus(3000);
    const auto par = check_format_batch(texts);
    const auto ser = check_format_batch_serial(texts);
    REQUIRE(par.size() == texts.size());
    CHECK(par == ser);
    for (std::size_t i = 0; i < texts.size(); i += 97) {
      CHECK(par[i] == check_format(texts[i]));
    }
  }

  TEST_CASE("parse kernels agree") {
    const auto texts = corpus(1000);
    CHECK(parse_batch(texts) == parse_batch_serial(texts));
  }

  TEST_CASE("score kernels agree and isolate errors") {
    const auto texts = corpus(1500);
    std::vector<EvalRecord> records;
    FixtureRng rng(5);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      EvalRecord r("r" + std::to_string(i), "d", {"alpha"},
                   parse_trajectory("q", texts[i]));
      const Trajectory& t = r.trajectory();
      // Every fifth parsed record stays unlabeled and must fail alone.
      if (t.format_ok() && i % 5 != 0) {
        std::vector<StepLabel> labels;
        for (const Step& s : t.steps()) {
          const auto pick = rng.below(3);
          if (pick == 0) {
            labels.push_back(StepLabel::optimal());
          } else if (pick == 1) {
            labels.push_back(StepLabel::unjudged("x"));
          } else {
            labels.push_back(s.is_search() ? StepLabel::over_search()
                                           : StepLabel::under_search());
          }
        }
        r = r.with_labels(std::move(labels));
      }
      records.push_back(std::move(r));
    }
    const RewardConfig config;
    const auto par = score_batch(records, config);
    const auto ser = score_batch_serial(records, config);
    REQUIRE(par.size() == records.size());
    CHECK(par == ser);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].reward.has_value() == par[i].error.empty());
      if (!par[i].reward) {
        ++errors;
        CHECK(records[i].trajectory().format_ok());
        CHECK_FALSE(records[i].labels());
      }
    }
    CHECK(errors > 0);
  }

  TEST_CASE("empty batches") {
    const std::vector<std::string> none;
    CHECK(check_format_batch(none).empty());
    CHECK(parse_batch(none).empty());
    CHECK(score_batch({}, RewardConfig()).empty());
  }
}
