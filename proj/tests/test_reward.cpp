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

#include "steprag/fixtures.hpp"
#include "steprag/grammar.hpp"
#include "steprag/reward.hpp"
#include "support.hpp"

using namespace steprag;

namespace {

double closed_form(int a, int f, int n, int nc, double lf, double lp) {
  const double frac = n == 0 ? 0.0 : static_cast<double>(nc) / n;
  return a * (1.0 - lf) + lf * f + lp * a * f * frac;
}

EvalRecord example_record(const char* file, std::vector<std::string> goldens) {
  return EvalRecord(
      "example", "d", std::move(goldens),
      parse_trajectory("q", testing::read_file(testing::fixture(file))));
}

const std::vector<std::string> kBloomsburg = {
    "Bloomsburg, Pennsylvania", "The Only Town in Pennsylvania", "Bloomsburg"};

}  // namespace

TEST_SUITE("reward") {
  TEST_CASE("reference points") {
    const RewardConfig c(0.2, 0.4);
    CHECK(hierarchical_reward(1, 1, 4, 4, c).total == 1.4);
    CHECK(hierarchical_reward(1, 0, 0, 0, c).total == 0.8);
    CHECK(hierarchical_reward(0, 1, 3, 3, c).total == 0.2);
    CHECK(hierarchical_reward(0, 0, 0, 0, c).total == 0.0);
  }

  TEST_CASE("closed form on random tuples") {
    FixtureRng rng(3);
    for (int i = 0; i < 10000; ++i) {
      const int a = static_cast<int>(rng.below(2));
      const int f = static_cast<int>(rng.below(2));
      const int n = static_cast<int>(rng.below(12));
      const int nc = n == 0 ? 0 : static_cast<int>(rng.below(n + 1));
      const double lf = static_cast<double>(rng.below(1001)) / 1000.0;
      const double lp = static_cast<double>(rng.below(1001)) / 1000.0;
      const RewardBreakdown r =
          hierarchical_reward(a, f, n, nc, RewardConfig(lf, lp));
      REQUIRE(r.total == closed_form(a, f, n, nc, lf, lp));
      const RewardBreakdown base =
          hierarchical_reward(a, f, n, nc, RewardConfig(lf, 0.0));
      REQUIRE(base.total == a * (1.0 - lf) + lf * f);
      if (a * f == 0) REQUIRE(r.total == base.total);
    }
  }

  TEST_CASE("bonus is monotone in optimal steps") {
    const RewardConfig c;
    for (int n = 1; n <= 8; ++n) {
      for (int k = 0; k < n; ++k) {
        CHECK(hierarchical_reward(1, 1, n, k, c).total <=
              hierarchical_reward(1, 1, n, k + 1, c).total);
      }
    }
    CHECK(hierarchical_reward(1, 1, 0, 0, c).bonus_fraction == 0.0);
  }

  TEST_CASE("bounds") {
    const RewardConfig c;
    CHECK_THROWS_AS(hierarchical_reward(2, 1, 1, 1, c), BoundsViolation);
    CHECK_THROWS_AS(hierarchical_reward(1, -1, 1, 1, c), BoundsViolation);
    CHECK_THROWS_AS(hierarchical_reward(1, 1, 2, 3, c), BoundsViolation);
    CHECK_THROWS_AS(hierarchical_reward(1, 1, -1, 0, c), BoundsViolation);
    CHECK_THROWS_AS(hierarchical_reward(1, 1, 2, -1, c), BoundsViolation);
  }

  TEST_CASE("cover exact match") {
    const std::vector<std::string> g = {"Bloomsburg, Pennsylvania"};
    CHECK(cem("Born in  BLOOMSBURG,\n pennsylvania.", g) == 1);
    CHECK(cem("Bloomsburg", g) == 0);  // golden must be inside the answer
    CHECK(cem("", g) == 0);
    const std::vector<std::string> blank = {"  "};
    CHECK(cem("anything", blank) == 0);
    CHECK(normalize_answer("  A\tB \n C ") == "a b c");
  }

  TEST_CASE("worked example records") {
    const RewardConfig c(0.2, 0.4);
    EvalRecord birthplace =
        example_record("birthplace_example.txt", kBloomsburg);
    birthplace =
        birthplace.with_labels({StepLabel::optimal(), StepLabel::optimal()});
    const RewardBreakdown r_birthplace = score_trajectory(birthplace, c);
    CHECK(r_birthplace.answer_correct == 1);
    CHECK(r_birthplace.steps == 2);
    CHECK(r_birthplace.total == 1.4);

    EvalRecord redundant =
        example_record("redundant_search_example.txt", kBloomsburg);
    redundant = redundant.with_labels(
        std::vector<StepLabel>(5, StepLabel::over_search()));
    const RewardBreakdown r_redundant = score_trajectory(redundant, c);
    CHECK(r_redundant.answer_correct == 0);
    CHECK(r_redundant.format_ok == 1);
    CHECK(r_redundant.total == 0.2);
  }

  TEST_CASE("score_trajectory conventions") {
    const RewardConfig c(0.2, 0.4);
    // Unparsable: N = 0, answer still graded.
    const EvalRecord bad("x", "d", {"paris"},
                         parse_trajectory("q", "<answer>Paris</answer>"));
    const RewardBreakdown rb = score_trajectory(bad, c);
    CHECK(rb.format_ok == 0);
    CHECK(rb.steps == 0);
    CHECK(rb.total == 0.8);

    // Labels are required when the bonus can be non-zero.
    EvalRecord birthplace =
        example_record("birthplace_example.txt", kBloomsburg);
    CHECK_THROWS_AS(score_trajectory(birthplace, c), MissingLabels);
    CHECK(score_trajectory(birthplace, RewardConfig(0.2, 0.0)).total == 1.0);

    // Unjudged steps do not earn the bonus.
    birthplace = birthplace.with_labels(
        {StepLabel::optimal(), StepLabel::unjudged("x")});
    CHECK(score_trajectory(birthplace, c).optimal_steps == 1);
    CHECK(score_trajectory(birthplace, c).total ==
          closed_form(1, 1, 2, 1, 0.2, 0.4));
  }
}
