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

#include "dialeval/text.hpp"

#include <stdexcept>

#include "dialeval/errors.hpp"

namespace dialeval {

namespace {

// Locale-free ASCII classification so tokenization never depends on the
// process locale.
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

char lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

void emit_rule_based(const std::string& tok, Tokens& out) {
  std::size_t begin = 0;
  std::size_t end = tok.size();
  while (begin < end && is_ascii_punct(tok[begin])) ++begin;
  while (end > begin && is_ascii_punct(tok[end - 1])) --end;
  for (std::size_t i = 0; i < begin; ++i) out.push_back(std::string(1, tok[i]));
  if (end > begin) out.push_back(tok.substr(begin, end - begin));
  for (std::size_t i = end; i < tok.size(); ++i) out.push_back(std::string(1, tok[i]));
}

}  // namespace

TokenizerMode parse_tokenizer_mode(const std::string& name) {
  if (name == "pretokenized") return TokenizerMode::pretokenized;
  if (name == "rule_based") return TokenizerMode::rule_based;
  throw ValidationError("unknown tokenizer mode '" + name + "'");
}

std::string to_string(TokenizerMode mode) {
  return mode == TokenizerMode::pretokenized ? "pretokenized" : "rule_based";
}

Tokens tokenize(std::string_view text, TokenizerMode mode) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) {
      std::string tok;
      tok.reserve(j - i);
      for (std::size_t k = i; k < j; ++k) tok.push_back(lower(text[k]));
      if (mode == TokenizerMode::rule_based) {
        emit_rule_based(tok, out);
      } else {
        out.push_back(std::move(tok));
      }
    }
    i = j;
  }
  return out;
}

Utterance make_utterance(std::string raw, TokenizerMode mode) {
  Utterance u;
  u.tokens = tokenize(raw, mode);
  u.raw = std::move(raw);
  return u;
}

NgramCounts ngrams(const Tokens& tokens, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ngrams: order must be >= 1");
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    Ngram gram(tokens.begin() + i, tokens.begin() + i + n);
    ++counts[gram];
  }
  return counts;
}

}  // namespace dialeval
