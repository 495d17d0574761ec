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

// The trajectory grammar.
//
//   <think>
//     <step> <reasoning>..</reasoning> [<search>..</search>
//            <context>..</context>] <conclusion>..</conclusion> </step>
//     ... one or more steps ...
//   </think>
//   <answer>..</answer>
//
// Only whitespace (space, tab, LF) may separate blocks. Tags are literal,
// case-sensitive and reserved: a tag token appearing anywhere other than its
// structural position rejects the whole text. Empty reasoning, query, context
// and conclusion content is accepted; an empty answer is not.

#ifndef STEPRAG_GRAMMAR_HPP_
#define STEPRAG_GRAMMAR_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steprag/trajectory.hpp"

namespace steprag {

namespace tags {
inline constexpr std::string_view kThinkOpen = "<think>";
inline constexpr std::string_view kThinkClose = "</think>";
inline constexpr std::string_view kStepOpen = "<step>";
inline constexpr std::string_view kStepClose = "</step>";
inline constexpr std::string_view kReasoningOpen = "<reasoning>";
inline constexpr std::string_view kReasoningClose = "</reasoning>";
inline constexpr std::string_view kSearchOpen = "<search>";
inline constexpr std::string_view kSearchClose = "</search>";
inline constexpr std::string_view kContextOpen = "<context>";
inline constexpr std::string_view kContextClose = "</context>";
inline constexpr std::string_view kConclusionOpen = "<conclusion>";
inline constexpr std::string_view kConclusionClose = "</conclusion>";
inline constexpr std::string_view kAnswerOpen = "<answer>";
inline constexpr std::string_view kAnswerClose = "</answer>";

inline constexpr std::array<std::string_view, 14> kReserved = {
    kThinkOpen,     kThinkClose,     kStepOpen,       kStepClose,
    kReasoningOpen, kReasoningClose, kSearchOpen,     kSearchClose,
    kContextOpen,   kContextClose,   kConclusionOpen, kConclusionClose,
    kAnswerOpen,    kAnswerClose};
}  // namespace tags

/// Byte offsets of one open/close tag pair in normalized text.
/// open_start < open_end <= close_start < close_end.
struct TagSpan {
  std::string tag_name;
  std::size_t open_start = 0;
  std::size_t open_end = 0;
  std::size_t close_start = 0;
  std::size_t close_end = 0;

  std::string_view inner(std::string_view text) const {
    return text.substr(open_end, close_start - open_end);
  }
};

struct StepLayout {
  StepKind kind = StepKind::kNonSearch;
  TagSpan step;
  TagSpan reasoning;
  std::optional<TagSpan> search;
  std::optional<TagSpan> context;
  TagSpan conclusion;
};

struct TrajectoryLayout {
  TagSpan think;
  std::vector<StepLayout> steps;
  TagSpan answer;
};

enum class FormatError {
  kNone,
  kThinkCount,
  kThinkOrder,
  kTextBeforeThink,
  kAnswerNotAfterThink,
  kAnswerCount,
  kEmptyAnswer,
  kTrailingText,
  kStrayText,
  kUnclosedStep,
  kInvalidStep,
  kNoSteps,
  kReservedTagInContent,
};

std::string_view describe(FormatError error);

/// (F, N): (1, N >= 1) on acceptance, (0, -1) otherwise.
struct FormatCheck {
  int format = 0;
  int steps = -1;

  friend bool operator==(const FormatCheck&, const FormatCheck&) = default;
};

/// First failure found while checking, with its byte offset into the
/// normalized text and the 1-based step it occurred in (0 when outside any
/// step).
struct FormatDiagnostic {
  FormatCheck result;
  FormatError error = FormatError::kNone;
  std::size_t offset = 0;
  int step = 0;

  std::string message() const;
};

/// CRLF and lone CR become LF; every other byte is left untouched.
std::string normalize(std::string_view text);

FormatCheck check_format(std::string_view text);
FormatDiagnostic diagnose_format(std::string_view text);

/// Validates the text strictly between one <step> and its </step>.
bool validate_step(std::string_view step_body);

/// Full span layout of already-normalized text; nullopt when rejected. When
/// `diagnostic` is non-null it receives the outcome either way.
std::optional<TrajectoryLayout> parse_layout(
    std::string_view normalized_text, FormatDiagnostic* diagnostic = nullptr);

/// Structured parse. Accepts exactly when check_format accepts; otherwise
/// returns the unparsable sentinel carrying raw_text and a best-effort answer
/// (see loose_answer).
Trajectory parse_trajectory(std::string_view question, std::string_view text);

/// Trimmed content of the last <answer>..</answer> pair, or "" when there is
/// none. Used for answers of trajectories that fail the format check.
std::string loose_answer(std::string_view text);

/// Drops whitespace adjacent to reserved tags. Two transcripts that differ
/// only in inter-tag layout map to the same string.
std::string collapse_tag_whitespace(std::string_view text);

}  // namespace steprag

#endif  // STEPRAG_GRAMMAR_HPP_
