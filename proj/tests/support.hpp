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

// Shared helpers for the unit and acceptance tests.

#ifndef STEPRAG_TESTS_SUPPORT_HPP_
#define STEPRAG_TESTS_SUPPORT_HPP_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace testing {

inline std::filesystem::path fixture(std::string_view name) {
  return std::filesystem::path(STEPRAG_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("steprag-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(std::string_view name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

// Reference acceptor written independently of the library: split the text
// into reserved-tag tokens and the text between them, then walk a small
// state machine. Returns (F, N).
namespace oracle {

inline constexpr std::string_view kTags[] = {
    "<think>",      "</think>",      "<step>",    "</step>",   "<reasoning>",
    "</reasoning>", "<search>",      "</search>", "<context>", "</context>",
    "<conclusion>", "</conclusion>", "<answer>",  "</answer>"};

inline bool blank(std::string_view s) {
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n') return false;
  }
  return true;
}

struct Token {
  bool is_tag;
  std::string text;
};

inline std::vector<Token> tokenize(const std::string& y) {
  std::vector<Token> out;
  std::string pending;
  std::size_t i = 0;
  while (i < y.size()) {
    std::string_view hit;
    for (auto t : kTags) {
      if (y.compare(i, t.size(), t) == 0) {
        hit = t;
        break;
      }
    }
    if (hit.empty()) {
      pending.push_back(y[i++]);
      continue;
    }
    out.push_back({false, pending});
    pending.clear();
    out.push_back({true, std::string(hit)});
    i += hit.size();
  }
  out.push_back({false, pending});
  return out;
}

inline std::pair<int, int> check(std::string_view text) {
  std::string y;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      y.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      y.push_back(text[i]);
    }
  }
  const std::vector<Token> toks = tokenize(y);
  // toks alternates text, tag, text, tag, ..., text.
  std::size_t k = 1;
  auto tag = [&]() -> std::string_view {
    return k < toks.size() ? std::string_view(toks[k].text) : "";
  };
  auto gap = [&]() -> const std::string& { return toks[k - 1].text; };
  auto expect = [&](std::string_view t, bool content) {
    if (tag() != t) return false;
    if (!content && !blank(gap())) return false;
    k += 2;
    return true;
  };
  const std::pair<int, int> reject{0, -1};

  if (!expect("<think>", false)) return reject;
  int steps = 0;
  while (tag() == "<step>") {
    if (!expect("<step>", false)) return reject;
    if (!expect("<reasoning>", false)) return reject;
    if (!expect("</reasoning>", true)) return reject;
    if (tag() == "<search>") {
      if (!expect("<search>", false)) return reject;
      if (!expect("</search>", true)) return reject;
      if (!expect("<context>", false)) return reject;
      if (!expect("</context>", true)) return reject;
    }
    if (!expect("<conclusion>", false)) return reject;
    if (!expect("</conclusion>", true)) return reject;
    if (!expect("</step>", false)) return reject;
    ++steps;
  }
  if (steps == 0) return reject;
  if (!expect("</think>", false)) return reject;
  if (!expect("<answer>", false)) return reject;
  if (tag() != "</answer>" || blank(gap())) return reject;
  k += 2;
  if (k != toks.size() || !blank(toks.back().text)) return reject;
  return {1, steps};
}

}  // namespace oracle
}  // namespace testing

#endif  // STEPRAG_TESTS_SUPPORT_HPP_
