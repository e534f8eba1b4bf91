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

#include "dialeval/embedding.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dialeval/errors.hpp"

namespace dialeval {

namespace {

std::string loc(const std::string& path, std::size_t line_no) {
  return path + ":" + std::to_string(line_no);
}

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_count(const std::string& field) {
  unsigned long long v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  return ec == std::errc() && ptr == end;
}

std::string join(const Tokens& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::vector<std::span<const double>> in_vocab_vectors(const Tokens& tokens,
                                                      const EmbeddingTable& table) {
  std::vector<std::span<const double>> vecs;
  for (const std::string& t : tokens) {
    if (const std::vector<double>* v = table.find(t)) vecs.emplace_back(*v);
  }
  if (vecs.empty())
    throw PairScoringError("all tokens out of vocabulary in: \"" + join(tokens) + "\"");
  return vecs;
}

}  // namespace

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw std::invalid_argument("cosine: dimension mismatch");
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open embeddings file " + path);

  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::vector<std::string> fields;
    std::string field;
    while (iss >> field) fields.push_back(field);
    if (fields.empty()) continue;

    if (first_content_line && fields.size() == 2 && parse_count(fields[0]) &&
        parse_count(fields[1])) {
      first_content_line = false;  // "count dim" header; dimension still inferred
      continue;
    }
    first_content_line = false;

    if (fields.size() < 2)
      throw ValidationError(loc(path, line_no) + ": expected token and vector");
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = 0;
      if (!parse_double(fields[i], v))
        throw ValidationError(loc(path, line_no) + ": non-numeric component '" +
                              fields[i] + "'");
      vec.push_back(v);
    }
    if (table.dim_ == 0) {
      table.dim_ = vec.size();
    } else if (vec.size() != table.dim_) {
      throw ValidationError(loc(path, line_no) + ": vector of dimension " +
                            std::to_string(vec.size()) + ", expected " +
                            std::to_string(table.dim_));
    }
    table.entries_.emplace(fields[0], std::move(vec));  // first occurrence wins
  }
  if (table.entries_.empty())
    throw ValidationError(path + ": no embedding vectors found");
  return table;
}

const std::vector<double>* EmbeddingTable::find(const std::string& token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

void EmbeddingTable::insert(std::string token, std::vector<double> vec) {
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_)
    throw ValidationError("embedding vector of dimension " + std::to_string(vec.size()) +
                          ", expected " + std::to_string(dim_));
  entries_.emplace(std::move(token), std::move(vec));
}

std::vector<double> sentence_vector(const Tokens& tokens, const EmbeddingTable& table,
                                    VectorKind kind) {
  auto vecs = in_vocab_vectors(tokens, table);
  std::size_t dim = vecs.front().size();
  std::vector<double> out(dim, 0.0);
  if (kind == VectorKind::average) {
    for (const auto& v : vecs)
      for (std::size_t d = 0; d < dim; ++d) out[d] += v[d];
    for (double& x : out) x /= static_cast<double>(vecs.size());
  } else {
    out.assign(vecs.front().begin(), vecs.front().end());
    for (std::size_t i = 1; i < vecs.size(); ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        double cand = vecs[i][d];
        double cur = out[d];
        if (std::fabs(cand) > std::fabs(cur) ||
            (std::fabs(cand) == std::fabs(cur) && cand > cur)) {
          out[d] = cand;
        }
      }
    }
  }
  return out;
}

double embedding_metric(const Tokens& hyp, const Tokens& ref,
                        const EmbeddingTable& table, VectorKind kind) {
  std::vector<double> hv = sentence_vector(hyp, table, kind);
  std::vector<double> rv = sentence_vector(ref, table, kind);
  return cosine(hv, rv);
}

namespace {

double directed_greedy(const std::vector<std::span<const double>>& from,
                       const std::vector<std::span<const double>>& to) {
  double sum = 0;
  for (const auto& u : from) {
    double best = -1.0;
    for (const auto& v : to) best = std::max(best, cosine(u, v));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

}  // namespace

double greedy_matching(const Tokens& hyp, const Tokens& ref, const EmbeddingTable& table) {
  auto hv = in_vocab_vectors(hyp, table);
  auto rv = in_vocab_vectors(ref, table);
  return (directed_greedy(hv, rv) + directed_greedy(rv, hv)) / 2.0;
}

SentenceEmbeddingProvider SentenceEmbeddingProvider::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open sentence embeddings file " + path);

  SentenceEmbeddingProvider provider;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object() || !obj.contains("text") ||
        !obj.contains("vector") || !obj["text"].is_string() ||
        !obj["vector"].is_array()) {
      throw ValidationError(loc(path, line_no) +
                            ": expected {\"text\": ..., \"vector\": [...]}");
    }
    std::vector<double> vec;
    for (const auto& x : obj["vector"]) {
      if (!x.is_number())
        throw ValidationError(loc(path, line_no) + ": non-numeric vector component");
      vec.push_back(x.get<double>());
    }
    if (vec.empty()) throw ValidationError(loc(path, line_no) + ": empty vector");
    if (provider.dim_ == 0) {
      provider.dim_ = vec.size();
    } else if (vec.size() != provider.dim_) {
      throw ValidationError(loc(path, line_no) + ": vector of dimension " +
                            std::to_string(vec.size()) + ", expected " +
                            std::to_string(provider.dim_));
    }
    provider.entries_.emplace(obj["text"].get<std::string>(), std::move(vec));
  }
  if (provider.entries_.empty())
    throw ValidationError(path + ": no sentence embeddings found");
  return provider;
}

const std::vector<double>* SentenceEmbeddingProvider::find(const std::string& text) const {
  auto it = entries_.find(text);
  return it == entries_.end() ? nullptr : &it->second;
}

void SentenceEmbeddingProvider::insert(std::string text, std::vector<double> vec) {
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_)
    throw ValidationError("sentence embedding of dimension " + std::to_string(vec.size()) +
                          ", expected " + std::to_string(dim_));
  entries_.emplace(std::move(text), std::move(vec));
}

double sentence_embedding_cosine(const std::string& hyp_text, const std::string& ref_text,
                                 const SentenceEmbeddingProvider& provider) {
  const std::vector<double>* hv = provider.find(hyp_text);
  if (!hv) throw PairScoringError("no sentence embedding for text: \"" + hyp_text + "\"");
  const std::vector<double>* rv = provider.find(ref_text);
  if (!rv) throw PairScoringError("no sentence embedding for text: \"" + ref_text + "\"");
  return cosine(*hv, *rv);
}

}  // namespace dialeval
