/*
 * Copyright (c) 2026, the dialeval authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dialeval/text.hpp"

namespace dialeval {

// Cosine similarity; 0 when either vector has zero norm.
double cosine(std::span<const double> u, std::span<const double> v);

// token -> dense vector table in word2vec text format. Treated as read-only
// once filled; scoring functions never mutate it.
class EmbeddingTable {
 public:
  // Text file with an optional "count dim" header line followed by
  // "token v1 ... vd" lines. The dimension is inferred from the first vector
  // line; duplicate tokens keep their first vector.
  static EmbeddingTable load(const std::string& path);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<double>* find(const std::string& token) const;
  // First insert wins, mirroring the file loader.
  void insert(std::string token, std::vector<double> vec);

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

enum class VectorKind { average, extrema };

// average: componentwise mean over in-vocabulary tokens. extrema: per
// dimension the value of largest magnitude (a +v/-v tie resolves positive).
// Out-of-vocabulary tokens are skipped; an all-OOV sentence is an error.
std::vector<double> sentence_vector(const Tokens& tokens, const EmbeddingTable& table,
                                    VectorKind kind);

double embedding_metric(const Tokens& hyp, const Tokens& ref,
                        const EmbeddingTable& table, VectorKind kind);

// Mean over in-vocabulary tokens of one side of the best cosine against the
// other side, averaged over both directions.
double greedy_matching(const Tokens& hyp, const Tokens& ref, const EmbeddingTable& table);

// Externally precomputed sentence vectors keyed by exact raw utterance text,
// one JSONL object {"text": ..., "vector": [...]} per line.
class SentenceEmbeddingProvider {
 public:
  static SentenceEmbeddingProvider load(const std::string& path);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<double>* find(const std::string& text) const;
  void insert(std::string text, std::vector<double> vec);

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

double sentence_embedding_cosine(const std::string& hyp_text, const std::string& ref_text,
                                 const SentenceEmbeddingProvider& provider);

}  // namespace dialeval
