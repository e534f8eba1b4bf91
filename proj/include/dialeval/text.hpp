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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dialeval {

using Tokens = std::vector<std::string>;

// pretokenized: split on whitespace only (the shipped test sets are already
// tokenized). rule_based: additionally split leading/trailing ASCII
// punctuation of each whitespace token into single-character tokens.
enum class TokenizerMode { pretokenized, rule_based };

TokenizerMode parse_tokenizer_mode(const std::string& name);
std::string to_string(TokenizerMode mode);

// Lowercases ASCII letters; bytes >= 0x80 pass through untouched.
Tokens tokenize(std::string_view text, TokenizerMode mode);

struct Utterance {
  std::string raw;
  Tokens tokens;
  bool operator==(const Utterance&) const = default;
};

Utterance make_utterance(std::string raw, TokenizerMode mode);

using Ngram = std::vector<std::string>;
using NgramCounts = std::map<Ngram, int>;

// Multiset of n-grams with occurrence counts. The total count over the map
// is max(0, tokens.size() - n + 1). n == 0 is rejected.
NgramCounts ngrams(const Tokens& tokens, std::size_t n);

}  // namespace dialeval
