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

#include "steprag/fixtures.hpp"

#include <array>
#include <fstream>

#include "steprag/grammar.hpp"
#include "steprag/io.hpp"
#include "steprag/text.hpp"

namespace steprag {
namespace {

std::vector<ScriptedReply> replies_from_json(const Json& j) {
  if (j.contains("error")) return {{j["error"].get<std::string>(), true}};
  if (j.contains("responses")) {
    std::vector<ScriptedReply> out;
    for (const auto& r : j["responses"]) {
      if (r.is_object()) {
        out.push_back({r.at("error").get<std::string>(), true});
      } else {
        out.push_back({r.get<std::string>()});
      }
    }
    if (out.empty()) throw std::invalid_argument("empty responses list");
    return out;
  }
  return {{j.at("response").get<std::string>()}};
}

}  // namespace

ScriptedBackend::ScriptedBackend(ScriptedBackend&& other) noexcept
    : strict_(other.strict_),
      by_key_(std::move(other.by_key_)),
      by_hash_(std::move(other.by_hash_)),
      default_(std::move(other.default_)),
      calls_(other.calls_.load()) {}

ScriptedBackend ScriptedBackend::from_jsonl(const std::filesystem::path& path,
                                            bool strict) {
  ScriptedBackend backend(strict);
  for (const auto& line : read_jsonl(path)) {
    if (!line.value) {
      throw IoError(path.string() + ":" + std::to_string(line.line_no) + ": " +
                    line.error);
    }
    const Json& j = *line.value;
    try {
      if (j.contains("default")) {
        backend.otherwise(j["default"].get<std::string>());
      } else if (j.contains("hash")) {
        backend.on_hash(j["hash"].get<std::string>(), replies_from_json(j));
      } else {
        backend.on(j.at("key").get<std::string>(), replies_from_json(j));
      }
    } catch (const std::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(line.line_no) + ": " +
                    e.what());
    }
  }
  return backend;
}

ScriptedBackend& ScriptedBackend::on(std::string key, std::string response) {
  return on(std::move(key), std::vector<ScriptedReply>{{std::move(response)}});
}

ScriptedBackend& ScriptedBackend::on(std::string key,
                                     std::vector<ScriptedReply> replies) {
  by_key_[std::move(key)] = std::move(replies);
  return *this;
}

ScriptedBackend& ScriptedBackend::on_hash(std::string hash,
                                          std::vector<ScriptedReply> replies) {
  by_hash_[std::move(hash)] = std::move(replies);
  return *this;
}

ScriptedBackend& ScriptedBackend::fail(std::string key, std::string message) {
  return on(std::move(key),
            std::vector<ScriptedReply>{{std::move(message), true}});
}

ScriptedBackend& ScriptedBackend::otherwise(std::string response) {
  default_ = std::move(response);
  return *this;
}

std::string ScriptedBackend::lookup(std::string_view key, int attempt) {
  ++calls_;
  const std::vector<ScriptedReply>* replies = nullptr;
  if (auto it = by_key_.find(key); it != by_key_.end()) {
    replies = &it->second;
  } else if (auto h = by_hash_.find(fingerprint(key)); h != by_hash_.end()) {
    replies = &h->second;
  }
  if (!replies) {
    if (!strict_ && default_) return *default_;
    throw BackendUnavailable("no scripted reply for request " +
                             fingerprint(key));
  }
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(attempt, 0)), replies->size() - 1);
  const ScriptedReply& reply = (*replies)[i];
  if (reply.error) throw BackendUnavailable(reply.text);
  return reply.text;
}

std::string ScriptedBackend::complete(const ChatRequest& request) {
  return lookup(request.user_message, request.attempt);
}

std::string ScriptedBackend::answer_standalone(std::string_view question) {
  return lookup(question, 0);
}

ScriptedGenerator ScriptedGenerator::from_jsonl(
    const std::filesystem::path& path) {
  ScriptedGenerator gen;
  for (const auto& line : read_jsonl(path)) {
    if (!line.value) {
      throw IoError(path.string() + ":" + std::to_string(line.line_no) + ": " +
                    line.error);
    }
    const Json& j = *line.value;
    try {
      std::string question = j.at("question").get<std::string>();
      if (j.contains("error")) {
        gen.fail(std::move(question), j["error"].get<std::string>());
      } else {
        gen.script(std::move(question),
                   j.at("segments").get<std::vector<std::string>>());
      }
    } catch (const std::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(line.line_no) + ": " +
                    e.what());
    }
  }
  return gen;
}

ScriptedGenerator& ScriptedGenerator::script(
    std::string question, std::vector<std::string> segments) {
  segments_[std::move(question)] = std::move(segments);
  return *this;
}

ScriptedGenerator& ScriptedGenerator::fail(std::string question,
                                           std::string message) {
  errors_[std::move(question)] = std::move(message);
  return *this;
}

std::string ScriptedGenerator::generate(const GenerationRequest& request) {
  if (auto e = errors_.find(request.question); e != errors_.end()) {
    throw BackendUnavailable(e->second);
  }
  auto it = segments_.find(request.question);
  if (it == segments_.end()) {
    throw BackendUnavailable("no generator script for question");
  }
  std::size_t index = 0;
  for (auto marker : RolloutConfig::stop_markers()) {
    index += count_occurrences(request.transcript, marker);
  }
  if (index >= it->second.size()) return {};
  return it->second[index];
}

std::uint64_t FixtureRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t FixtureRng::below(std::uint64_t bound) { return next() % bound; }

namespace {

constexpr std::array<std::string_view, 32> kWords = {
    "alpha",   "river",  "museum", "century",    "population", "capital",
    "author",  "film",   "season", "league",     "album",      "mountain",
    "treaty",  "island", "bridge", "composer",   "festival",   "company",
    "station", "planet", "1946",   "Bloomsburg", "north",      "record",
    "player",  "novel",  "king",   "battle",     "language",   "school",
    "PS5",     "$175.40"};
constexpr std::array<std::string_view, 10> kPunct = {
    ".", ",", "?", "!", ";", ":", "'s", " (born)", " -", " & co"};
constexpr std::array<std::string_view, 8> kSeparators = {
    "", "\n", " ", "\n  ", "\t", "\r\n", "\n\n", "  \n"};

std::string sentence(FixtureRng& rng, int min_words, int max_words) {
  const int n =
      min_words + static_cast<int>(rng.below(
                      static_cast<std::uint64_t>(max_words - min_words + 1)));
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i > 0) out.push_back(' ');
    out += kWords[rng.below(kWords.size())];
    if (rng.below(6) == 0) out += kPunct[rng.below(kPunct.size())];
  }
  return out;
}

std::string_view sep(FixtureRng& rng) {
  return kSeparators[rng.below(kSeparators.size())];
}

// Tag content: usually a padded sentence, occasionally empty (allowed
// everywhere except the answer).
std::string content(FixtureRng& rng, bool allow_empty) {
  if (allow_empty && rng.below(25) == 0) return std::string(sep(rng));
  std::string out(rng.below(4) == 0 ? sep(rng) : "");
  out += sentence(rng, 1, 14);
  if (rng.below(4) == 0) out += sep(rng);
  return out;
}

void append_pair(std::string& out, std::string_view open,
                 std::string_view close, std::string_view body) {
  out += open;
  out += body;
  out += close;
}

}  // namespace

GeneratedTrajectory generate_valid_trajectory(std::uint64_t seed,
                                              int max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  FixtureRng rng(seed);
  GeneratedTrajectory g;
  g.steps =
      1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_steps)));
  std::string& t = g.text;
  t += sep(rng);
  t += tags::kThinkOpen;
  for (int i = 0; i < g.steps; ++i) {
    t += sep(rng);
    t += tags::kStepOpen;
    t += sep(rng);
    append_pair(t, tags::kReasoningOpen, tags::kReasoningClose,
                content(rng, true));
    if (rng.below(2) == 0) {
      ++g.search_steps;
      t += sep(rng);
      append_pair(t, tags::kSearchOpen, tags::kSearchClose, content(rng, true));
      t += sep(rng);
      append_pair(t, tags::kContextOpen, tags::kContextClose,
                  content(rng, true));
    }
    t += sep(rng);
    append_pair(t, tags::kConclusionOpen, tags::kConclusionClose,
                content(rng, true));
    t += sep(rng);
    t += tags::kStepClose;
  }
  t += sep(rng);
  t += tags::kThinkClose;
  t += sep(rng);
  append_pair(t, tags::kAnswerOpen, tags::kAnswerClose, content(rng, false));
  t += sep(rng);
  return g;
}

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::kDropTag:
      return "drop_tag";
    case Mutation::kDupTag:
      return "dup_tag";
    case Mutation::kSwapOrder:
      return "swap_order";
    case Mutation::kInjectText:
      return "inject_text";
  }
  return "unknown";
}

std::string mutate_trajectory(std::string_view text, Mutation mutation,
                              std::uint64_t seed) {
  const std::string y = normalize(text);
  auto layout = parse_layout(y);
  if (!layout) throw NoMutationSite("input does not pass the format check");
  FixtureRng rng(seed);

  // Tag pairs inside each step, in document order.
  auto inner_pairs = [](const StepLayout& s) {
    std::vector<const TagSpan*> pairs{&s.reasoning};
    if (s.search) pairs.push_back(&*s.search);
    if (s.context) pairs.push_back(&*s.context);
    pairs.push_back(&s.conclusion);
    return pairs;
  };

  switch (mutation) {
    case Mutation::kDropTag: {
      // (offset, length) of every tag token.
      std::vector<std::pair<std::size_t, std::size_t>> sites;
      auto add = [&](const TagSpan& s) {
        sites.emplace_back(s.open_start, s.open_end - s.open_start);
        sites.emplace_back(s.close_start, s.close_end - s.close_start);
      };
      add(layout->think);
      add(layout->answer);
      for (const auto& step : layout->steps) {
        add(step.step);
        for (const TagSpan* p : inner_pairs(step)) add(*p);
      }
      const auto [pos, len] = sites[rng.below(sites.size())];
      std::string out = y;
      out.erase(pos, len);
      return out;
    }
    case Mutation::kDupTag: {
      // A whole duplicated <step> block is itself valid, so steps are not
      // candidates here.
      std::vector<const TagSpan*> sites{&layout->think, &layout->answer};
      for (const auto& step : layout->steps) {
        for (const TagSpan* p : inner_pairs(step)) sites.push_back(p);
      }
      const TagSpan& s = *sites[rng.below(sites.size())];
      std::string out = y;
      out.insert(s.close_end,
                 y.substr(s.open_start, s.close_end - s.open_start));
      return out;
    }
    case Mutation::kSwapOrder: {
      std::vector<std::pair<const TagSpan*, const TagSpan*>> sites;
      for (const auto& step : layout->steps) {
        auto pairs = inner_pairs(step);
        for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
          sites.emplace_back(pairs[i], pairs[i + 1]);
        }
      }
      if (sites.empty()) throw NoMutationSite("no adjacent tag pairs");
      const auto [a, b] = sites[rng.below(sites.size())];
      const std::string_view v = y;
      std::string out(v.substr(0, a->open_start));
      out += v.substr(b->open_start, b->close_end - b->open_start);
      out += v.substr(a->close_end, b->open_start - a->close_end);
      out += v.substr(a->open_start, a->close_end - a->open_start);
      out += v.substr(b->close_end);
      return out;
    }
    case Mutation::kInjectText: {
      // Block boundaries only; content positions would stay valid.
      std::vector<std::size_t> sites{layout->think.open_start,
                                     layout->think.open_end,
                                     layout->think.close_start,
                                     layout->think.close_end,
                                     layout->answer.open_start,
                                     layout->answer.close_end,
                                     y.size()};
      for (const auto& step : layout->steps) {
        sites.push_back(step.step.open_start);
        sites.push_back(step.step.open_end);
        sites.push_back(step.step.close_end);
        for (const TagSpan* p : inner_pairs(step))
          sites.push_back(p->close_end);
      }
      constexpr std::array<std::string_view, 4> kJunk = {"hello", "x",
                                                         "stray text", "42"};
      std::string out = y;
      out.insert(sites[rng.below(sites.size())],
                 std::string(kJunk[rng.below(kJunk.size())]));
      return out;
    }
  }
  throw NoMutationSite("unknown mutation");
}

}  // namespace steprag
