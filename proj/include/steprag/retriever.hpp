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

#ifndef STEPRAG_RETRIEVER_HPP_
#define STEPRAG_RETRIEVER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "steprag/rollout.hpp"

namespace steprag {

struct Document {
  std::string id;
  std::string title;
  std::string body;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

/// Lowercased maximal runs of ASCII alphanumerics. Bytes >= 0x80 are kept as
/// word characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

struct ScoredDocument {
  const Document* document = nullptr;
  double score = 0.0;
};

/// Immutable BM25 index over title + body. Safe for concurrent queries.
class CorpusIndex {
 public:
  /// Throws DuplicateId. Documents are kept in input order.
  explicit CorpusIndex(std::vector<Document> documents, Bm25Params params = {});

  /// Top-k documents sharing at least one term with the query, by descending
  /// score then ascending id. Throws std::invalid_argument when k == 0.
  std::vector<ScoredDocument> retrieve(std::string_view query,
                                       std::size_t k) const;

  std::size_t size() const { return documents_.size(); }
  const std::vector<Document>& documents() const { return documents_; }
  const Bm25Params& params() const { return params_; }
  double average_length() const { return avg_length_; }
  /// Number of documents containing the term (0 when unseen).
  std::size_t document_frequency(std::string_view term) const;

 private:
  struct Posting {
    std::uint32_t doc;
    std::uint32_t tf;
  };

  std::vector<Document> documents_;
  Bm25Params params_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::uint32_t> lengths_;
  double avg_length_ = 0.0;
};

/// One JSON object per line with string fields id, title, body. Throws
/// std::runtime_error on I/O or parse failures (with the line number).
std::vector<Document> load_corpus_jsonl(const std::filesystem::path& path);

/// RetrieverBackend over a CorpusIndex.
class LexicalRetriever final : public RetrieverBackend {
 public:
  explicit LexicalRetriever(const CorpusIndex& index) : index_(index) {}
  std::vector<Passage> retrieve(std::string_view query, std::size_t k) override;

 private:
  const CorpusIndex& index_;
};

}  // namespace steprag

#endif  // STEPRAG_RETRIEVER_HPP_
