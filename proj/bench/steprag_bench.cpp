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

// Serial reference versus OpenMP for the batch kernels.

#include <benchmark/benchmark.h>

#include "steprag/batch.hpp"
#include "steprag/fixtures.hpp"
#include "steprag/grammar.hpp"

namespace {

using namespace steprag;

std::vector<std::string> texts(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(generate_valid_trajectory(i, 8).text);
  }
  return out;
}

std::vector<EvalRecord> records(std::size_t n) {
  std::vector<EvalRecord> out;
  for (const auto& t : texts(n)) {
    EvalRecord r("id", "d", {"alpha"}, parse_trajectory("q", t));
    std::vector<StepLabel> labels;
    for (const Step& s : r.trajectory().steps()) {
      labels.push_back(s.is_search() ? StepLabel::over_search()
                                     : StepLabel::optimal());
    }
    out.push_back(r.with_labels(std::move(labels)));
  }
  return out;
}

void BM_CheckFormatSerial(benchmark::State& state) {
  const auto in = texts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_format_batch_serial(in));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CheckFormatParallel(benchmark::State& state) {
  const auto in = texts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_format_batch(in));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScoreSerial(benchmark::State& state) {
  const auto in = records(static_cast<std::size_t>(state.range(0)));
  const RewardConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(score_batch_serial(in, c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScoreParallel(benchmark::State& state) {
  const auto in = records(static_cast<std::size_t>(state.range(0)));
  const RewardConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(score_batch(in, c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_CheckFormatSerial)->Arg(1024)->Arg(16384);
BENCHMARK(BM_CheckFormatParallel)->Arg(1024)->Arg(16384);
BENCHMARK(BM_ScoreSerial)->Arg(1024)->Arg(16384);
BENCHMARK(BM_ScoreParallel)->Arg(1024)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
