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

#include <random>

#include "doctest.h"
#include "testutil.hpp"

using namespace dialeval;

TEST_CASE("tokenize pretokenized splits on whitespace and lowercases") {
  CHECK(tokenize("i 'll be right back with it .", TokenizerMode::pretokenized) ==
        Tokens{"i", "'ll", "be", "right", "back", "with", "it", "."});
  CHECK(tokenize("Hello  World", TokenizerMode::pretokenized) == Tokens{"hello", "world"});
  CHECK(tokenize("", TokenizerMode::pretokenized).empty());
  CHECK(tokenize("  \t \n ", TokenizerMode::pretokenized).empty());
}

TEST_CASE("tokenize rule_based splits edge punctuation") {
  CHECK(tokenize("Check please.", TokenizerMode::rule_based) ==
        Tokens{"check", "please", "."});
  CHECK(tokenize("(hello),", TokenizerMode::rule_based) ==
        Tokens{"(", "hello", ")", ","});
  CHECK(tokenize("...", TokenizerMode::rule_based) == Tokens{".", ".", "."});
  // internal punctuation is kept
  CHECK(tokenize("don't stop", TokenizerMode::rule_based) == Tokens{"don't", "stop"});
}

TEST_CASE("tokenize leaves non-ASCII bytes alone") {
  Tokens toks = tokenize("caf\xc3\xa9 TIME", TokenizerMode::pretokenized);
  CHECK(toks == Tokens{"caf\xc3\xa9", "time"});
}

TEST_CASE("tokenize is idempotent on its own pretokenized output") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Tokens tokens = testutil::random_sentence(rng, 10, 5, 0);
    Tokens again = tokenize(testutil::join_tokens(tokens), TokenizerMode::pretokenized);
    CHECK(again == tokens);
  }
}

TEST_CASE("ngrams spec examples") {
  Tokens aba{"a", "b", "a"};
  NgramCounts bi = ngrams(aba, 2);
  CHECK(bi.size() == 2);
  CHECK(bi.at(Ngram{"a", "b"}) == 1);
  CHECK(bi.at(Ngram{"b", "a"}) == 1);

  NgramCounts uni = ngrams(aba, 1);
  CHECK(uni.at(Ngram{"a"}) == 2);
  CHECK(uni.at(Ngram{"b"}) == 1);

  CHECK(ngrams(Tokens{"a"}, 2).empty());
  CHECK_THROWS_AS(ngrams(aba, 0), std::invalid_argument);
}

TEST_CASE("ngrams total count is max(0, len - n + 1)") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens tokens = testutil::random_sentence(rng, 12, 4, 0);
    std::uniform_int_distribution<std::size_t> ndist(1, 5);
    std::size_t n = ndist(rng);
    long total = 0;
    for (const auto& [gram, count] : ngrams(tokens, n)) total += count;
    long expected = tokens.size() >= n ? static_cast<long>(tokens.size() - n + 1) : 0;
    CHECK(total == expected);
  }
}
