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

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <regex>
#include <set>

#include "steprag/retriever.hpp"
#include "support.hpp"

using namespace steprag;

namespace {

// Direct BM25 over re-tokenized documents, no index.
std::vector<std::pair<std::string, double>> naive_bm25(
    const std::vector<Document>& docs, const std::string& query, double k1,
    double b) {
  static const std::regex word("[A-Za-z0-9\\x80-\\xff]+");
  auto words = [](const std::string& s) {
    std::vector<std::string> out;
    for (std::sregex_iterator it(s.begin(), s.end(), word), end; it != end;
         ++it) {
      std::string w = it->str();
      for (char& c : w) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
      out.push_back(w);
    }
    return out;
  };
  std::vector<std::vector<std::string>> bodies;
  double total = 0;
  for (const auto& d : docs) {
    bodies.push_back(words(d.title + " " + d.body));
    total += static_cast<double>(bodies.back().size());
  }
  const double n = static_cast<double>(docs.size());
  const double avg = total / n;
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    double score = 0;
    bool hit = false;
    for (const auto& q : words(query)) {
      double df = 0;
      for (const auto& body : bodies) {
        if (std::find(body.begin(), body.end(), q) != body.end()) df += 1;
      }
      const double tf = static_cast<double>(
          std::count(bodies[i].begin(), bodies[i].end(), q));
      if (tf == 0) continue;
      hit = true;
      const double idf = std::log(1 + (n - df + 0.5) / (df + 0.5));
      const double len = static_cast<double>(bodies[i].size());
      score += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len / avg));
    }
    if (hit) out.emplace_back(docs[i].id, score);
  }
  return out;
}

}  // namespace

TEST_SUITE("retriever") {
  TEST_CASE("tokenizer") {
    CHECK(tokenize("Hello, World-42!") ==
          std::vector<std::string>{"hello", "world", "42"});
    CHECK(tokenize("Zürich café") ==
          std::vector<std::string>{"zürich", "café"});
    CHECK(tokenize("  ").empty());
  }

  TEST_CASE("scores match a direct computation") {
    const std::vector<std::string> vocab = {"river", "city",  "song",  "born",
                                            "film",  "actor", "music", "paris",
                                            "alpha", "beta"};
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Document> docs;
      const int n = 3 + static_cast<int>(rng() % 20);
      for (int i = 0; i < n; ++i) {
        std::string body;
        const int len = 1 + static_cast<int>(rng() % 15);
        for (int w = 0; w < len; ++w) body += vocab[rng() % vocab.size()] + " ";
        docs.push_back(
            {"d" + std::to_string(i), vocab[rng() % vocab.size()], body});
      }
      const Bm25Params params{0.5 + static_cast<double>(rng() % 100) / 50.0,
                              static_cast<double>(rng() % 101) / 100.0};
      const CorpusIndex index(docs, params);
      const std::string query =
          vocab[rng() % vocab.size()] + " " + vocab[rng() % vocab.size()];
      auto want = naive_bm25(docs, query, params.k1, params.b);
      std::stable_sort(want.begin(), want.end(),
                       [](auto& a, auto& c) { return a.second > c.second; });
      const auto got = index.retrieve(query, docs.size());
      REQUIRE(got.size() == want.size());
      std::map<std::string, double> by_id(want.begin(), want.end());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].score ==
              doctest::Approx(by_id.at(got[i].document->id)).epsilon(1e-12));
        CHECK(got[i].score == doctest::Approx(want[i].second).epsilon(1e-12));
        if (i > 0) CHECK(got[i - 1].score >= got[i].score);
      }
    }
  }

  TEST_CASE("ties break by id and k truncates") {
    const std::vector<Document> docs = {{"c", "", "same words"},
                                        {"a", "", "same words"},
                                        {"b", "", "same words"},
                                        {"z", "", "unrelated"}};
    const CorpusIndex index(docs);
    const auto all = index.retrieve("words", 10);
    REQUIRE(all.size() == 3);
    CHECK(all[0].document->id == "a");
    CHECK(all[1].document->id == "b");
    CHECK(all[2].document->id == "c");
    const auto top = index.retrieve("words", 2);
    REQUIRE(top.size() == 2);
    CHECK(top[1].document->id == "b");
    CHECK(index.retrieve("nothing here", 3).empty());
    CHECK_THROWS_AS(index.retrieve("words", 0), std::invalid_argument);
    CHECK(index.document_frequency("same") == 3);
    CHECK(index.document_frequency("missing") == 0);
  }

  TEST_CASE("duplicate ids are rejected") {
    CHECK_THROWS_AS(CorpusIndex({{"a", "", "x"}, {"a", "", "y"}}), DuplicateId);
  }

  TEST_CASE("fixture corpus") {
    const CorpusIndex index(
        load_corpus_jsonl(testing::fixture("corpus.jsonl")));
    CHECK(index.size() == 12);
    const auto hits = index.retrieve("Place of birth of Lacy J. Dalton", 1);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].document->id == "lacy-j-dalton");
    LexicalRetriever r(index);
    const auto passages = r.retrieve("Lacy Dalton", 1);
    REQUIRE(passages.size() == 1);
    CHECK(passages[0].title == "Lacy J. Dalton");
  }

  TEST_CASE("corpus loading errors carry the line") {
    testing::TempDir dir;
    testing::write_file(dir / "c.jsonl",
                        "{\"id\":\"a\",\"body\":\"x\"}\n\n{bad\n");
    try {
      load_corpus_jsonl(dir / "c.jsonl");
      FAIL("expected an error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
    CHECK_THROWS(load_corpus_jsonl(dir / "missing.jsonl"));
  }
}
