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

#include "steprag/grammar.hpp"

#include <utility>

#include "steprag/text.hpp"

namespace steprag {
namespace {

constexpr auto npos = std::string_view::npos;

std::size_t count_reserved(std::string_view s) {
  std::size_t n = 0;
  for (auto tag : tags::kReserved) n += count_occurrences(s, tag);
  return n;
}

// Locates the unique open/close pair of `open`/`close` inside y[begin, end).
// Callers have already checked both counts are exactly one.
std::optional<TagSpan> pair_span(std::string_view y, std::size_t begin,
                                 std::size_t end, std::string_view open,
                                 std::string_view close) {
  const std::string_view region = y.substr(begin, end - begin);
  const std::size_t o = region.find(open);
  const std::size_t c = region.find(close);
  if (o == npos || c == npos || c < o + open.size()) return std::nullopt;
  TagSpan span;
  span.tag_name = std::string(open.substr(1, open.size() - 2));
  span.open_start = begin + o;
  span.open_end = begin + o + open.size();
  span.close_start = begin + c;
  span.close_end = begin + c + close.size();
  return span;
}

bool blank_between(std::string_view y, std::size_t from, std::size_t to) {
  return from <= to && is_blank(y.substr(from, to - from));
}

// Step body is y[begin, end). Returns the layout with absolute offsets, or
// nullopt if the body matches neither step schema.
std::optional<StepLayout> check_step(std::string_view y, std::size_t begin,
                                     std::size_t end) {
  // Strip the body, keeping absolute offsets.
  while (begin < end && is_space(y[begin])) ++begin;
  while (end > begin && is_space(y[end - 1])) --end;
  const std::string_view s = y.substr(begin, end - begin);

  if (count_occurrences(s, tags::kReasoningOpen) != 1 ||
      count_occurrences(s, tags::kReasoningClose) != 1) {
    return std::nullopt;
  }
  auto reasoning =
      pair_span(y, begin, end, tags::kReasoningOpen, tags::kReasoningClose);
  if (!reasoning || reasoning->open_start != begin) return std::nullopt;

  if (count_occurrences(s, tags::kConclusionOpen) != 1 ||
      count_occurrences(s, tags::kConclusionClose) != 1) {
    return std::nullopt;
  }
  auto conclusion =
      pair_span(y, begin, end, tags::kConclusionOpen, tags::kConclusionClose);
  if (!conclusion) return std::nullopt;
  if (conclusion->open_start < reasoning->close_end) return std::nullopt;
  if (conclusion->close_end != end) return std::nullopt;

  StepLayout layout;
  const bool has_search =
      s.find(tags::kSearchOpen) != npos || s.find(tags::kContextOpen) != npos;
  if (has_search) {
    if (count_occurrences(s, tags::kSearchOpen) != 1 ||
        count_occurrences(s, tags::kSearchClose) != 1 ||
        count_occurrences(s, tags::kContextOpen) != 1 ||
        count_occurrences(s, tags::kContextClose) != 1) {
      return std::nullopt;
    }
    auto search =
        pair_span(y, begin, end, tags::kSearchOpen, tags::kSearchClose);
    auto context =
        pair_span(y, begin, end, tags::kContextOpen, tags::kContextClose);
    if (!search || !context) return std::nullopt;
    if (reasoning->close_end > search->open_start ||
        search->close_end > context->open_start ||
        context->close_end > conclusion->open_start) {
      return std::nullopt;
    }
    if (!blank_between(y, reasoning->close_end, search->open_start) ||
        !blank_between(y, search->close_end, context->open_start) ||
        !blank_between(y, context->close_end, conclusion->open_start)) {
      return std::nullopt;
    }
    layout.kind = StepKind::kSearch;
    layout.search = std::move(search);
    layout.context = std::move(context);
  } else {
    if (!blank_between(y, reasoning->close_end, conclusion->open_start)) {
      return std::nullopt;
    }
    layout.kind = StepKind::kNonSearch;
  }

  // Any reserved token beyond the structural ones sits inside content.
  const std::size_t expected = layout.kind == StepKind::kSearch ? 8 : 4;
  if (count_reserved(s) != expected) return std::nullopt;

  layout.reasoning = std::move(*reasoning);
  layout.conclusion = std::move(*conclusion);
  return layout;
}

struct ScanOutcome {
  std::optional<TrajectoryLayout> layout;
  FormatDiagnostic diagnostic;
};

ScanOutcome fail(FormatError error, std::size_t offset, int step = 0) {
  ScanOutcome out;
  out.diagnostic.result = FormatCheck{0, -1};
  out.diagnostic.error = error;
  out.diagnostic.offset = offset;
  out.diagnostic.step = step;
  return out;
}

ScanOutcome scan(std::string_view y) {
  using namespace tags;
  if (count_occurrences(y, kThinkOpen) != 1 ||
      count_occurrences(y, kThinkClose) != 1) {
    return fail(FormatError::kThinkCount, 0);
  }
  const std::size_t think_open = y.find(kThinkOpen);
  const std::size_t think_close = y.find(kThinkClose);
  if (think_close < think_open + kThinkOpen.size()) {
    return fail(FormatError::kThinkOrder, think_close);
  }
  if (!is_blank(y.substr(0, think_open))) {
    return fail(FormatError::kTextBeforeThink, 0);
  }

  const std::size_t content_begin = think_open + kThinkOpen.size();
  const std::size_t content_end = think_close;
  const std::size_t post = think_close + kThinkClose.size();

  std::size_t answer_open = post;
  while (answer_open < y.size() && is_space(y[answer_open])) ++answer_open;
  if (y.substr(answer_open, kAnswerOpen.size()) != kAnswerOpen) {
    return fail(FormatError::kAnswerNotAfterThink, answer_open);
  }
  const std::string_view post_text = y.substr(post);
  if (count_occurrences(post_text, kAnswerOpen) != 1 ||
      count_occurrences(post_text, kAnswerClose) != 1) {
    return fail(FormatError::kAnswerCount, post);
  }
  auto answer = pair_span(y, post, y.size(), kAnswerOpen, kAnswerClose);
  if (!answer) return fail(FormatError::kAnswerCount, post);
  if (is_blank(answer->inner(y))) {
    return fail(FormatError::kEmptyAnswer, answer->open_end);
  }
  if (!is_blank(y.substr(answer->close_end))) {
    return fail(FormatError::kTrailingText, answer->close_end);
  }

  TrajectoryLayout layout;
  layout.think = TagSpan{"think", think_open, content_begin, think_close,
                         think_close + kThinkClose.size()};
  const std::string_view t =
      y.substr(content_begin, content_end - content_begin);
  std::size_t p = 0;
  int n = 0;
  while (true) {
    const std::size_t j = t.find(kStepOpen, p);
    if (j == npos) {
      if (!is_blank(t.substr(p))) {
        return fail(FormatError::kStrayText, content_begin + p, n);
      }
      break;
    }
    if (!is_blank(t.substr(p, j - p))) {
      return fail(FormatError::kStrayText, content_begin + p, n);
    }
    const std::size_t k = t.find(kStepClose, j);
    if (k == npos) {
      return fail(FormatError::kUnclosedStep, content_begin + j, n + 1);
    }
    auto step =
        check_step(y, content_begin + j + kStepOpen.size(), content_begin + k);
    if (!step) {
      return fail(FormatError::kInvalidStep, content_begin + j, n + 1);
    }
    step->step =
        TagSpan{"step", content_begin + j, content_begin + j + kStepOpen.size(),
                content_begin + k, content_begin + k + kStepClose.size()};
    layout.steps.push_back(std::move(*step));
    p = k + kStepClose.size();
    ++n;
  }
  if (n < 1) return fail(FormatError::kNoSteps, content_begin);

  std::size_t expected = 4;
  for (const auto& step : layout.steps) {
    expected += step.kind == StepKind::kSearch ? 10 : 6;
  }
  if (count_reserved(y) != expected) {
    return fail(FormatError::kReservedTagInContent, answer->open_end);
  }

  layout.answer = std::move(*answer);
  ScanOutcome out;
  out.diagnostic.result = FormatCheck{1, n};
  out.layout = std::move(layout);
  return out;
}

}  // namespace

std::string_view describe(FormatError error) {
  switch (error) {
    case FormatError::kNone:
      return "ok";
    case FormatError::kThinkCount:
      return "expected exactly one <think> and one </think>";
    case FormatError::kThinkOrder:
      return "</think> precedes <think>";
    case FormatError::kTextBeforeThink:
      return "text before <think>";
    case FormatError::kAnswerNotAfterThink:
      return "<answer> must follow </think>";
    case FormatError::kAnswerCount:
      return "expected exactly one <answer>..</answer> pair after </think>";
    case FormatError::kEmptyAnswer:
      return "empty answer";
    case FormatError::kTrailingText:
      return "text after </answer>";
    case FormatError::kStrayText:
      return "text outside <step> blocks inside <think>";
    case FormatError::kUnclosedStep:
      return "<step> without </step>";
    case FormatError::kInvalidStep:
      return "step matches neither the search nor the non-search schema";
    case FormatError::kNoSteps:
      return "no steps inside <think>";
    case FormatError::kReservedTagInContent:
      return "reserved tag inside content";
  }
  return "unknown";
}

std::string FormatDiagnostic::message() const {
  if (error == FormatError::kNone) return "ok";
  std::string msg(describe(error));
  if (step > 0) msg += " (step " + std::to_string(step) + ")";
  msg += " at byte " + std::to_string(offset);
  return msg;
}

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

FormatCheck check_format(std::string_view text) {
  return diagnose_format(text).result;
}

FormatDiagnostic diagnose_format(std::string_view text) {
  const std::string y = normalize(text);
  return scan(y).diagnostic;
}

bool validate_step(std::string_view step_body) {
  const std::string s = normalize(step_body);
  return check_step(s, 0, s.size()).has_value();
}

std::optional<TrajectoryLayout> parse_layout(std::string_view normalized_text,
                                             FormatDiagnostic* diagnostic) {
  ScanOutcome out = scan(normalized_text);
  if (diagnostic) *diagnostic = out.diagnostic;
  return std::move(out.layout);
}

Trajectory parse_trajectory(std::string_view question, std::string_view text) {
  const std::string y = normalize(text);
  auto layout = parse_layout(y);
  if (!layout) {
    return Trajectory::unparsable(question, std::string(text), loose_answer(y));
  }
  std::vector<Step> steps;
  steps.reserve(layout->steps.size());
  int index = 1;
  for (const auto& s : layout->steps) {
    if (s.kind == StepKind::kSearch) {
      steps.push_back(Step::search(index, s.reasoning.inner(y),
                                   s.search->inner(y), s.context->inner(y),
                                   s.conclusion.inner(y)));
    } else {
      steps.push_back(
          Step::non_search(index, s.reasoning.inner(y), s.conclusion.inner(y)));
    }
    ++index;
  }
  const int n = static_cast<int>(steps.size());
  return Trajectory::make(question, std::string(text), std::move(steps),
                          layout->answer.inner(y), true, n);
}

std::string loose_answer(std::string_view text) {
  const std::string y = normalize(text);
  const std::string_view v = y;
  const std::size_t open = v.rfind(tags::kAnswerOpen);
  if (open == npos) return {};
  const std::size_t begin = open + tags::kAnswerOpen.size();
  const std::size_t close = v.find(tags::kAnswerClose, begin);
  if (close == npos) return {};
  return std::string(trim(v.substr(begin, close - begin)));
}

std::string collapse_tag_whitespace(std::string_view text) {
  const std::string y = normalize(text);
  const std::string_view v = y;
  std::string out;
  out.reserve(v.size());
  std::size_t i = 0;
  while (i < v.size()) {
    std::string_view matched;
    if (v[i] == '<') {
      for (auto tag : tags::kReserved) {
        if (v.substr(i, tag.size()) == tag) {
          matched = tag;
          break;
        }
      }
    }
    if (matched.empty()) {
      out.push_back(v[i++]);
      continue;
    }
    while (!out.empty() && is_space(out.back())) out.pop_back();
    out.append(matched);
    i += matched.size();
    while (i < v.size() && is_space(v[i])) ++i;
  }
  return std::string(trim(out));
}

}  // namespace steprag
