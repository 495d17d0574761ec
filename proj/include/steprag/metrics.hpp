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

// Batch metrics: cover-exact-match rate, over-search rate (flagged search
// steps / search steps) and under-search rate (flagged non-search steps /
// non-search steps). Only steps of parsed trajectories enter the step
// counts; a zero denominator yields a rate of 0.

#ifndef STEPRAG_METRICS_HPP_
#define STEPRAG_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "steprag/trajectory.hpp"

namespace steprag {

struct MetricCounts {
  std::size_t records = 0;
  std::size_t parsed = 0;
  std::size_t correct = 0;
  std::size_t search_steps = 0;
  std::size_t non_search_steps = 0;
  std::size_t flagged_over = 0;
  std::size_t flagged_under = 0;
  std::size_t unjudged = 0;

  MetricCounts& operator+=(const MetricCounts& other);
  friend MetricCounts operator+(MetricCounts a, const MetricCounts& b) {
    return a += b;
  }
  friend bool operator==(const MetricCounts&, const MetricCounts&) = default;

  double cem_rate() const;
  double osr() const;
  double usr() const;
};

/// Counts for a single record. Steps without labels count toward their
/// denominator and toward `unjudged`.
MetricCounts count_record(const EvalRecord& record);

double compute_osr(std::span<const EvalRecord> records);
double compute_usr(std::span<const EvalRecord> records);

struct DatasetRow {
  std::string dataset;
  MetricCounts counts;
};

struct RateTriple {
  double cem_rate = 0.0;
  double osr = 0.0;
  double usr = 0.0;
};

/// Per-dataset rows (sorted by name), the pooled overall row (micro average,
/// the headline), and the unweighted mean of per-dataset rates (macro).
struct MetricsReport {
  std::vector<DatasetRow> datasets;
  MetricCounts overall;

  RateTriple micro() const;
  RateTriple macro() const;
};

MetricsReport aggregate_report(std::span<const EvalRecord> records);

/// Merges partial reports built from disjoint record sets. Associative and
/// commutative; merge(aggregate(a), aggregate(b)) == aggregate(a ++ b).
MetricsReport merge_reports(const MetricsReport& a, const MetricsReport& b);

/// Fixed-width text table: one row per dataset, then "overall (micro)" and
/// "overall (macro)".
std::string render_table(const MetricsReport& report);

}  // namespace steprag

#endif  // STEPRAG_METRICS_HPP_
