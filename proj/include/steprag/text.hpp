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

#ifndef STEPRAG_TEXT_HPP_
#define STEPRAG_TEXT_HPP_

#include <cstddef>
#include <string_view>

namespace steprag {

// Whitespace is exactly space, tab and LF. CR never survives normalize().
constexpr bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n'; }

constexpr std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

constexpr bool is_blank(std::string_view s) { return trim(s).empty(); }

/// Non-overlapping occurrences of needle in hay.
constexpr std::size_t count_occurrences(std::string_view hay,
                                        std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace steprag

#endif  // STEPRAG_TEXT_HPP_
