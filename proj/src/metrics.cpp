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

#include "steprag/metrics.hpp"

#include <cstdio>
#include <map>

#include "steprag/reward.hpp"

namespace steprag {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricCounts& MetricCounts::operator+=(const MetricCounts& o) {
  records += o.records;
  parsed += o.parsed;
  correct += o.correct;
  search_steps += o.search_steps;
  non_search_steps += o.non_search_steps;
  flagged_over += o.flagged_over;
  flagged_under += o.flagged_under;
  unjudged += o.unjudged;
  return *this;
}

double MetricCounts::cem_rate() const { return ratio(correct, records); }
double MetricCounts::osr() const { return ratio(flagged_over, search_steps); }
double MetricCounts::usr() const {
  return ratio(flagged_under, non_search_steps);
}

MetricCounts count_record(const EvalRecord& record) {
  MetricCounts c;
  c.records = 1;
  const Trajectory& t = record.trajectory();
  c.correct =
      static_cast<std::size_t>(cem(t.answer(), record.golden_answers()));
  if (!t.format_ok()) return c;
  c.parsed = 1;
  c.search_steps = t.search_step_count();
  c.non_search_steps = t.non_search_step_count();
  if (!record.labels()) {
    c.unjudged = t.steps().size();
    return c;
  }
  for (const StepLabel& label : *record.labels()) {
    switch (label.verdict) {
      case Verdict::kOverSearch:
        ++c.flagged_over;
        break;
      case Verdict::kUnderSearch:
        ++c.flagged_under;
        break;
      case Verdict::kUnjudged:
        ++c.unjudged;
        break;
      case Verdict::kOptimal:
        break;
    }
  }
  return c;
}

double compute_osr(std::span<const EvalRecord> records) {
  MetricCounts total;
  for (const auto& r : records) total += count_record(r);
  return total.osr();
}

double compute_usr(std::span<const EvalRecord> records) {
  MetricCounts total;
  for (const auto& r : records) total += count_record(r);
  return total.usr();
}

RateTriple MetricsReport::micro() const {
  return {overall.cem_rate(), overall.osr(), overall.usr()};
}

RateTriple MetricsReport::macro() const {
  RateTriple m;
  if (datasets.empty()) return m;
  for (const auto& row : datasets) {
    m.cem_rate += row.counts.cem_rate();
    m.osr += row.counts.osr();
    m.usr += row.counts.usr();
  }
  const double n = static_cast<double>(datasets.size());
  m.cem_rate /= n;
  m.osr /= n;
  m.usr /= n;
  return m;
}

MetricsReport aggregate_report(std::span<const EvalRecord> records) {
  std::map<std::string, MetricCounts> by_dataset;
  for (const auto& r : records) by_dataset[r.dataset()] += count_record(r);
  MetricsReport report;
  for (auto& [name, counts] : by_dataset) {
    report.datasets.push_back({name, counts});
    report.overall += counts;
  }
  return report;
}

MetricsReport merge_reports(const MetricsReport& a, const MetricsReport& b) {
  std::map<std::string, MetricCounts> by_dataset;
  for (const auto& row : a.datasets) by_dataset[row.dataset] += row.counts;
  for (const auto& row : b.datasets) by_dataset[row.dataset] += row.counts;
  MetricsReport out;
  for (auto& [name, counts] : by_dataset) {
    out.datasets.push_back({name, counts});
  }
  out.overall = a.overall + b.overall;
  return out;
}

std::string render_table(const MetricsReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-20s %8s %8s %8s %8s %8s %8s %8s %8s\n",
                "dataset", "records", "parsed", "CEM", "OSR", "USR", "search",
                "nonsrch", "unjudged");
  out += line;
  auto row = [&](const std::string& name, const MetricCounts& c,
                 const RateTriple& r) {
    std::snprintf(line, sizeof line,
                  "%-20s %8zu %8zu %8.4f %8.4f %8.4f %8zu %8zu %8zu\n",
                  name.c_str(), c.records, c.parsed, r.cem_rate, r.osr, r.usr,
                  c.search_steps, c.non_search_steps, c.unjudged);
    out += line;
  };
  for (const auto& d : report.datasets) {
    row(d.dataset, d.counts,
        {d.counts.cem_rate(), d.counts.osr(), d.counts.usr()});
  }
  row("overall (micro)", report.overall, report.micro());
  row("overall (macro)", report.overall, report.macro());
  return out;
}

}  // namespace steprag
