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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "dialeval/errors.hpp"
#include "dialeval/overlap.hpp"

namespace dialeval {

namespace {

// Reference length used by the brevity penalty: closest to the hypothesis
// length, ties broken towards the shorter reference.
std::size_t closest_ref_length(std::size_t hyp_len, const std::vector<Tokens>& refs) {
  std::size_t best = refs.front().size();
  for (const Tokens& ref : refs) {
    std::size_t len = ref.size();
    auto dist = [&](std::size_t l) {
      return l > hyp_len ? l - hyp_len : hyp_len - l;
    };
    if (dist(len) < dist(best) || (dist(len) == dist(best) && len < best)) best = len;
  }
  return best;
}

}  // namespace

double sentence_bleu(const Tokens& hyp, const std::vector<Tokens>& refs,
                     const BleuParams& params) {
  if (params.max_n < 1 || params.max_n > 4)
    throw std::invalid_argument("sentence_bleu: max_n must be in [1,4]");
  if (params.epsilon <= 0)
    throw std::invalid_argument("sentence_bleu: epsilon must be > 0");
  if (hyp.empty()) throw PairScoringError("sentence_bleu: empty hypothesis");
  if (refs.empty()) throw PairScoringError("sentence_bleu: empty reference set");
  for (const Tokens& ref : refs)
    if (ref.empty()) throw PairScoringError("sentence_bleu: empty reference");

  double product = 1.0;
  for (int k = 1; k <= params.max_n; ++k) {
    NgramCounts hyp_counts = ngrams(hyp, static_cast<std::size_t>(k));
    NgramCounts clip;
    for (const Tokens& ref : refs) {
      for (const auto& [gram, count] : ngrams(ref, static_cast<std::size_t>(k))) {
        int& c = clip[gram];
        c = std::max(c, count);
      }
    }
    long matched = 0;
    long total = 0;
    for (const auto& [gram, count] : hyp_counts) {
      total += count;
      auto it = clip.find(gram);
      if (it != clip.end()) matched += std::min(count, it->second);
    }
    double numer = matched > 0 ? static_cast<double>(matched) : params.epsilon;
    double denom = total > 0 ? static_cast<double>(total) : 1.0;
    product *= numer / denom;
  }

  double geo_mean = std::pow(product, 1.0 / params.max_n);
  std::size_t c = hyp.size();
  std::size_t r = closest_ref_length(c, refs);
  double bp = c > r ? 1.0
                    : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  return bp * geo_mean;
}

}  // namespace dialeval
