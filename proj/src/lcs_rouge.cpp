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
#include <stdexcept>

#include "dialeval/errors.hpp"
#include "dialeval/overlap.hpp"

namespace dialeval {

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  if (a.empty() || b.empty()) return 0;
  // Two-row DP over the shorter sequence.
  const Tokens& rows = a.size() <= b.size() ? a : b;
  const Tokens& cols = a.size() <= b.size() ? b : a;
  std::vector<std::size_t> prev(cols.size() + 1, 0), cur(cols.size() + 1, 0);
  for (std::size_t i = 1; i <= rows.size(); ++i) {
    for (std::size_t j = 1; j <= cols.size(); ++j) {
      cur[j] = rows[i - 1] == cols[j - 1] ? prev[j - 1] + 1
                                          : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[cols.size()];
}

double rouge_l(const Tokens& hyp, const Tokens& ref, const RougeParams& params) {
  if (params.beta <= 0) throw std::invalid_argument("rouge_l: beta must be > 0");
  if (hyp.empty()) throw PairScoringError("rouge_l: empty hypothesis");
  if (ref.empty()) throw PairScoringError("rouge_l: empty reference");
  std::size_t lcs = lcs_length(hyp, ref);
  if (lcs == 0) return 0.0;
  double p = static_cast<double>(lcs) / static_cast<double>(hyp.size());
  double r = static_cast<double>(lcs) / static_cast<double>(ref.size());
  double b2 = params.beta * params.beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

}  // namespace dialeval
