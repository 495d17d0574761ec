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

#include "steprag/retriever.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <unordered_set>

#include "steprag/errors.hpp"

namespace steprag {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

CorpusIndex::CorpusIndex(std::vector<Document> documents, Bm25Params params)
    : documents_(std::move(documents)), params_(params) {
  std::unordered_set<std::string_view> seen;
  for (const auto& d : documents_) {
    if (!seen.insert(d.id).second) throw DuplicateId("duplicate id: " + d.id);
  }
  lengths_.reserve(documents_.size());
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i < documents_.size(); ++i) {
    std::unordered_map<std::string, std::uint32_t> tf;
    std::uint32_t length = 0;
    for (const auto* field : {&documents_[i].title, &documents_[i].body}) {
      for (auto& token : tokenize(*field)) {
        ++tf[std::move(token)];
        ++length;
      }
    }
    // Postings stay sorted by document because documents are visited in order.
    for (auto& [term, count] : tf) postings_[term].push_back({i, count});
    lengths_.push_back(length);
    total += length;
  }
  avg_length_ = documents_.empty() ? 0.0
                                   : static_cast<double>(total) /
                                         static_cast<double>(documents_.size());
}

std::size_t CorpusIndex::document_frequency(std::string_view term) const {
  auto it = postings_.find(std::string(term));
  return it == postings_.end() ? 0 : it->second.size();
}

std::vector<ScoredDocument> CorpusIndex::retrieve(std::string_view query,
                                                  std::size_t k) const {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  const double n = static_cast<double>(documents_.size());
  std::vector<double> scores(documents_.size(), 0.0);
  std::vector<bool> matched(documents_.size(), false);
  for (const auto& term : tokenize(query)) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double df = static_cast<double>(it->second.size());
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    for (const Posting& p : it->second) {
      const double tf = p.tf;
      const double norm =
          params_.k1 *
          (1.0 - params_.b +
           params_.b * static_cast<double>(lengths_[p.doc]) / avg_length_);
      scores[p.doc] += idf * tf * (params_.k1 + 1.0) / (tf + norm);
      matched[p.doc] = true;
    }
  }

  std::vector<ScoredDocument> ranked;
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    if (matched[i]) ranked.push_back({&documents_[i], scores[i]});
  }
  auto better = [](const ScoredDocument& a, const ScoredDocument& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.document->id < b.document->id;
  };
  if (ranked.size() > k) {
    std::partial_sort(ranked.begin(),
                      ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end(), better);
    ranked.resize(k);
  } else {
    std::sort(ranked.begin(), ranked.end(), better);
  }
  return ranked;
}

std::vector<Document> load_corpus_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path.string());
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      docs.push_back({j.at("id").get<std::string>(),
                      j.value("title", std::string()),
                      j.at("body").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return docs;
}

std::vector<Passage> LexicalRetriever::retrieve(std::string_view query,
                                                std::size_t k) {
  std::vector<Passage> out;
  for (const auto& hit : index_.retrieve(query, k)) {
    out.push_back({hit.document->title, hit.document->body});
  }
  return out;
}

}  // namespace steprag
