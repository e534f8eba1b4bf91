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

#include <cmath>
#include <random>

#include "dialeval/errors.hpp"
#include "dialeval/overlap.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace dialeval;

TEST_CASE("lcs_length examples") {
  Tokens a{"a", "b", "c", "b", "d", "a", "b"};
  Tokens b{"b", "d", "c", "a", "b", "a"};
  CHECK(oracle::naive_lcs(a, b) == 4);  // the independent enumeration agrees
  CHECK(lcs_length(a, b) == 4);
  CHECK(lcs_length({}, {"a", "b"}) == 0);
  CHECK(lcs_length(a, a) == a.size());
}

TEST_CASE("lcs_length equals exhaustive enumeration and is symmetric") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens a = testutil::random_sentence(rng, 8, 4, 0);
    Tokens b = testutil::random_sentence(rng, 8, 4, 0);
    std::size_t got = lcs_length(a, b);
    CHECK(got == oracle::naive_lcs(a, b));
    CHECK(got == lcs_length(b, a));
  }
}

TEST_CASE("rouge_l examples") {
  Tokens hyp{"the", "cat", "sat", "on", "mat"};
  Tokens ref{"the", "cat", "on", "the", "mat"};
  CHECK(rouge_l(hyp, hyp) == doctest::Approx(1.0));
  CHECK(rouge_l(hyp, ref) == doctest::Approx(0.8));  // LCS 4, P = R = 0.8
  CHECK(rouge_l({"x", "y"}, {"p", "q"}) == 0.0);
  CHECK_THROWS_AS(rouge_l({}, ref), PairScoringError);
  CHECK_THROWS_AS(rouge_l(hyp, {}), PairScoringError);
}

TEST_CASE("rouge_l beta limits") {
  Tokens hyp{"a", "b", "c", "d"};
  Tokens ref{"a", "b"};
  std::size_t lcs = lcs_length(hyp, ref);
  double p = static_cast<double>(lcs) / hyp.size();
  double r = static_cast<double>(lcs) / ref.size();
  CHECK(rouge_l(hyp, ref, {1.0}) == doctest::Approx(2 * p * r / (p + r)));
  CHECK(rouge_l(hyp, ref, {1e6}) == doctest::Approx(r).epsilon(1e-6));
}

TEST_CASE("sentence_bleu reproduces the worked multi-reference example") {
  Tokens hyp = tokenize("sure , i 'll grab it and be right with you .",
                        TokenizerMode::pretokenized);
  Tokens close_ref =
      tokenize("i 'll be right back with it .", TokenizerMode::pretokenized);
  Tokens far_ref = tokenize("ok , how was everything ?", TokenizerMode::pretokenized);

  double multi = sentence_bleu(hyp, {close_ref}, {2, 0.1});
  CHECK(multi == doctest::Approx(std::sqrt(7.0 / 12.0 * 2.0 / 11.0)));
  CHECK(multi == doctest::Approx(0.3257).epsilon(2e-4));

  double single = sentence_bleu(hyp, {far_ref}, {2, 0.1});
  CHECK(single == doctest::Approx(std::sqrt(1.0 / 12.0 * 0.1 / 11.0)));
  CHECK(single == doctest::Approx(0.0275).epsilon(2e-3));
}

TEST_CASE("sentence_bleu identity and input validation") {
  Tokens x{"a", "b", "c"};
  CHECK(sentence_bleu(x, {x}, {2, 0.1}) == 1.0);
  CHECK(sentence_bleu(x, {x}, {3, 0.1}) == 1.0);
  CHECK_THROWS_AS(sentence_bleu({}, {x}, {2, 0.1}), PairScoringError);
  CHECK_THROWS_AS(sentence_bleu(x, {}, {2, 0.1}), PairScoringError);
  CHECK_THROWS_AS(sentence_bleu(x, {Tokens{}}, {2, 0.1}), PairScoringError);
  CHECK_THROWS_AS(sentence_bleu(x, {x}, {0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(sentence_bleu(x, {x}, {2, 0.0}), std::invalid_argument);
}

TEST_CASE("sentence_bleu brevity penalty picks the closest reference, shorter on ties") {
  Tokens hyp{"a", "b", "c"};
  // lengths 2 and 4 are equally close; the shorter one (2) wins, so BP = 1.
  double s = sentence_bleu(hyp, {Tokens{"a", "b"}, Tokens{"a", "b", "c", "d"}}, {1, 0.1});
  CHECK(s == doctest::Approx(1.0));  // p1 = 3/3, BP = 1 since c > r
  // single longer reference: BP = exp(1 - 5/3)
  double penalized = sentence_bleu(hyp, {Tokens{"a", "b", "c", "d", "e"}}, {1, 0.1});
  CHECK(penalized == doctest::Approx(std::exp(1.0 - 5.0 / 3.0) * 1.0));
}

TEST_CASE("sentence_bleu matches the brute-force clipper exactly") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> refs_dist(1, 3);
  std::uniform_int_distribution<int> order_dist(1, 4);
  for (int trial = 0; trial < 500; ++trial) {
    Tokens hyp = testutil::random_sentence(rng, 10, 5);
    std::vector<Tokens> refs;
    int nrefs = refs_dist(rng);
    for (int r = 0; r < nrefs; ++r) refs.push_back(testutil::random_sentence(rng, 10, 5));
    int max_n = order_dist(rng);
    double got = sentence_bleu(hyp, refs, {max_n, 0.1});
    double expected = oracle::naive_bleu(hyp, refs, max_n, 0.1);
    CAPTURE(trial);
    REQUIRE(got == expected);  // bit-exact: same contract, independent counting
    REQUIRE(got >= 0.0);
    REQUIRE(got <= 1.0);
  }
}
