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

#include <vector>

#include "dialeval/text.hpp"

namespace dialeval {

struct BleuParams {
  int max_n = 4;         // n-gram order, in [1,4]
  double epsilon = 0.1;  // numerator substitute when an order has zero matches
};

enum class MeteorStage { exact, stem };

struct MeteorParams {
  double alpha = 0.9;  // recall weight of the F-mean, in (0,1)
  double beta = 3.0;   // fragmentation penalty exponent, > 0
  double gamma = 0.5;  // fragmentation penalty weight, in [0,1]
  std::vector<MeteorStage> stages{MeteorStage::exact, MeteorStage::stem};
};

struct RougeParams {
  double beta = 1.2;  // F-measure recall weight, > 0
};

std::size_t lcs_length(const Tokens& a, const Tokens& b);

// LCS F-measure: P = LCS/|hyp|, R = LCS/|ref|, F = (1+b^2)PR / (R + b^2 P).
// Returns 0 when the LCS is empty.
double rouge_l(const Tokens& hyp, const Tokens& ref, const RougeParams& params = {});

// Sentence-level BLEU with per-n-gram counts clipped by the maximum count
// over the references. An order with zero matches contributes epsilon in the
// numerator; an order longer than the hypothesis contributes epsilon over a
// denominator of 1. Brevity penalty uses the reference whose length is
// closest to the hypothesis (ties prefer the shorter reference).
double sentence_bleu(const Tokens& hyp, const std::vector<Tokens>& refs,
                     const BleuParams& params = {});

struct MeteorAlignment {
  int matches = 0;
  int chunks = 0;
};

// Staged one-to-one alignment. Each stage (exact token equality, then equal
// Porter stems) matches only still-unmatched tokens and is maximum
// cardinality; among all such alignments the one with the fewest chunks is
// chosen, remaining ties resolved by preferring matches at leftmost
// hypothesis positions.
MeteorAlignment meteor_align(const Tokens& hyp, const Tokens& ref,
                             const std::vector<MeteorStage>& stages);

double meteor(const Tokens& hyp, const Tokens& ref, const MeteorParams& params = {});

}  // namespace dialeval
