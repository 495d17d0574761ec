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

#include "steprag/rollout.hpp"

#include <utility>

#include "steprag/grammar.hpp"
#include "steprag/prompts.hpp"
#include "steprag/text.hpp"

namespace steprag {
namespace {

constexpr std::array<std::string_view, 3> kStopMarkers = {
    tags::kSearchClose, tags::kConclusionClose, tags::kAnswerClose};
constexpr std::array<std::string_view, 1> kAnswerOnly = {tags::kAnswerClose};

constexpr std::string_view kStepOpener = "<step><reasoning>";

struct Emission {
  std::string text;
  std::string_view boundary;  // empty when the generator stalled
};

// Cuts the generator output at its earliest stop marker.
Emission cut_at_marker(std::string raw,
                       std::span<const std::string_view> markers) {
  std::size_t best = std::string::npos;
  std::string_view which;
  for (auto marker : markers) {
    const std::size_t pos = raw.find(marker);
    if (pos != std::string::npos && pos < best) {
      best = pos;
      which = marker;
    }
  }
  if (best == std::string::npos) return {std::move(raw), {}};
  raw.resize(best + which.size());
  return {std::move(raw), which};
}

std::string last_query(std::string_view y) {
  const std::size_t close = y.rfind(tags::kSearchClose);
  if (close == std::string_view::npos) return {};
  const std::size_t open = y.rfind(tags::kSearchOpen, close);
  if (open == std::string_view::npos) return {};
  const std::size_t begin = open + tags::kSearchOpen.size();
  return std::string(trim(y.substr(begin, close - begin)));
}

bool starts_with_after_ws(std::string_view s, std::string_view prefix) {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i, prefix.size()) == prefix;
}

}  // namespace

RolloutConfig::RolloutConfig(std::size_t step_budget, std::size_t top_k,
                             std::size_t max_chars, SamplingMode mode)
    : step_budget_(step_budget),
      top_k_(top_k),
      max_chars_(max_chars),
      mode_(mode) {
  if (step_budget_ == 0) throw ConfigError("step budget must be >= 1");
  if (top_k_ == 0) throw ConfigError("top_k must be >= 1");
  if (max_chars_ == 0) throw ConfigError("max_chars must be >= 1");
}

std::span<const std::string_view> RolloutConfig::stop_markers() {
  return kStopMarkers;
}

std::string format_context(std::span<const Passage> passages) {
  std::string out;
  for (std::size_t i = 0; i < passages.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += "Doc " + std::to_string(i + 1) + "(Title: \"" + passages[i].title +
           "\") " + passages[i].body;
  }
  return out;
}

RolloutResult run_inference(std::string_view question,
                            GeneratorBackend& generator,
                            RetrieverBackend& retriever,
                            const RolloutConfig& config) {
  RolloutResult result{
      Trajectory::unparsable(question, {}), {}, {}, false, 0, 0};
  std::string y = "<think>";
  y += kStepOpener;

  auto generate = [&](std::span<const std::string_view> markers) {
    GenerationRequest request;
    request.system_prompt = prompts::parsable_format_system();
    request.question = question;
    request.transcript = y;
    request.stop_markers = markers;
    request.mode = config.mode();
    request.max_chars = config.max_chars();
    ++result.generator_calls;
    return cut_at_marker(generator.generate(request), markers);
  };

  auto stalled = [&](const Emission& e) {
    y += e.text;
    result.stalled = true;
    result.diagnostic =
        e.text.size() >= config.max_chars()
            ? "generator stalled: no stop marker within " +
                  std::to_string(config.max_chars()) + " characters"
            : std::string(
                  "generator stalled: output ended without a stop marker");
    result.transcript = y;
    result.trajectory = Trajectory::unparsable(question, y, loose_answer(y));
    return result;
  };

  std::size_t step = 1;
  bool fresh_step = true;
  bool think_closed = false;
  std::optional<std::size_t> early_answer_step;

  while (step <= config.step_budget()) {
    Emission e = generate(kStopMarkers);
    if (e.boundary.empty()) return stalled(e);

    if (fresh_step && starts_with_after_ws(e.text, tags::kThinkClose)) {
      y.resize(y.size() - kStepOpener.size());
      y += e.text;
      think_closed = true;
      break;
    }
    fresh_step = false;
    y += e.text;

    if (e.boundary == tags::kAnswerClose) {
      early_answer_step = step;
      break;
    }
    if (e.boundary == tags::kSearchClose) {
      std::vector<Passage> docs =
          retriever.retrieve(last_query(y), config.top_k());
      ++result.retrieval_calls;
      if (docs.size() > config.top_k()) docs.resize(config.top_k());
      y += tags::kContextOpen;
      y += format_context(docs);
      y += tags::kContextClose;
      y += tags::kConclusionOpen;
      continue;
    }
    y += tags::kStepClose;
    ++step;
    if (step <= config.step_budget()) {
      y += kStepOpener;
      fresh_step = true;
    }
  }

  if (!think_closed) y += tags::kThinkClose;
  if (y.find(tags::kAnswerClose) == std::string::npos) {
    y += tags::kAnswerOpen;
    Emission e = generate(kAnswerOnly);
    if (e.boundary.empty()) return stalled(e);
    y += e.text;
  }

  result.transcript = y;
  result.trajectory = parse_trajectory(question, y);
  if (!result.trajectory.format_ok()) {
    if (early_answer_step) {
      result.diagnostic =
          "answer emitted inside step " + std::to_string(*early_answer_step);
    } else {
      result.diagnostic = diagnose_format(y).message();
    }
  }
  return result;
}

}  // namespace steprag
