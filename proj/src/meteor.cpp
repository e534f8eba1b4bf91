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
#include <map>
#include <stdexcept>

#include "dialeval/errors.hpp"
#include "dialeval/overlap.hpp"
#include "dialeval/porter.hpp"

namespace dialeval {

namespace {

int get(const std::map<std::string, int>& m, const std::string& key) {
  auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}

// The match cardinality of each stage is fixed by token counts (within a
// surface class every token is interchangeable), so the search below only
// decides which positions carry the matches. It enumerates assignments in a
// canonical order (leftmost hypothesis position first, chunk-extending
// reference position first, then smallest, matching before skipping) and
// keeps the first alignment with the fewest chunks, pruning branches that
// already reach the best known chunk count.
//
// Exact chunk minimization is NP-hard for heavily repeated tokens, so the
// refinement phase is capped by a fixed node budget. The first descent
// always completes (feasibility is checked before descending), which makes
// the result deterministic and exact for ordinary sentences; adversarial
// repetition degrades only the chunk count, never the match count.
constexpr long kSearchNodeBudget = 1'000'000;

struct AlignSearch {
  const Tokens& hyp;
  const Tokens& ref;
  Tokens hyp_stem, ref_stem;
  bool use_exact = false;
  bool use_stem = false;

  std::map<std::string, int> exact_rem;          // surface class -> pairs to place
  std::map<std::string, int> stem_rem;           // stem class -> pairs to place
  std::map<std::string, int> exact_rem_by_stem;  // exact demand grouped by stem

  std::map<std::string, int> hyp_avail_class, hyp_avail_stem;
  std::map<std::string, int> ref_free_class, ref_free_stem;
  std::vector<char> ref_used;

  int need = 0;
  int cur_chunks = 0;
  int best_chunks = 0;
  bool found = false;
  int last_i = -2, last_j = -2;
  long nodes_left = kSearchNodeBudget;

  AlignSearch(const Tokens& h, const Tokens& r) : hyp(h), ref(r) {}

  bool feasible() const {
    for (const auto& [c, rem] : exact_rem) {
      if (rem <= 0) continue;
      if (get(hyp_avail_class, c) < rem || get(ref_free_class, c) < rem) return false;
    }
    for (const auto& [s, rem] : stem_rem) {
      if (rem <= 0) continue;
      int demand = rem + get(exact_rem_by_stem, s);
      if (get(hyp_avail_stem, s) < demand || get(ref_free_stem, s) < demand)
        return false;
    }
    return true;
  }

  // done() covers: a branch that cannot improve, a perfect single-chunk
  // solution, and an exhausted refinement budget.
  bool done() const {
    return (found && (cur_chunks >= best_chunks || best_chunks <= 1)) || nodes_left <= 0;
  }

  bool try_pair(std::size_t i, std::size_t j) {
    if (ref_used[j]) return false;
    const std::string& cls = hyp[i];
    const std::string& stm = hyp_stem[i];
    bool exact_pair = false;
    if (use_exact && ref[j] == cls) {
      if (exact_rem[cls] <= 0) return false;  // same surface only in the exact stage
      exact_pair = true;
    } else if (use_stem && ref_stem[j] == stm && stem_rem[stm] > 0) {
      // cross-surface stem pair (or any stem pair when exact is off)
    } else {
      return false;
    }

    ref_used[j] = 1;
    --ref_free_class[ref[j]];
    --ref_free_stem[ref_stem[j]];
    int& budget = exact_pair ? exact_rem[cls] : stem_rem[stm];
    --budget;
    if (exact_pair) --exact_rem_by_stem[stm];
    --need;
    int chunk_add =
        (last_i == static_cast<int>(i) - 1 && last_j == static_cast<int>(j) - 1) ? 0 : 1;
    int pi = last_i, pj = last_j;
    last_i = static_cast<int>(i);
    last_j = static_cast<int>(j);
    cur_chunks += chunk_add;

    if (feasible()) dfs(i + 1);

    cur_chunks -= chunk_add;
    last_i = pi;
    last_j = pj;
    ++need;
    if (exact_pair) ++exact_rem_by_stem[stm];
    ++budget;
    ++ref_free_stem[ref_stem[j]];
    ++ref_free_class[ref[j]];
    ref_used[j] = 0;
    return true;
  }

  void dfs(std::size_t i) {
    --nodes_left;
    if (done()) return;
    if (need == 0) {
      best_chunks = cur_chunks;
      found = true;
      return;
    }
    if (i == hyp.size() || static_cast<int>(hyp.size() - i) < need) return;

    const std::string& cls = hyp[i];
    const std::string& stm = hyp_stem[i];
    --hyp_avail_class[cls];
    --hyp_avail_stem[stm];

    // Extending the current chunk is both the canonical first move and the
    // strongest heuristic, so the first full descent is already near optimal.
    std::size_t cont = static_cast<std::size_t>(last_j) + 1;
    bool has_cont = last_i == static_cast<int>(i) - 1 && last_j >= -1 &&
                    cont < ref.size();
    if (has_cont && !done()) try_pair(i, cont);
    for (std::size_t j = 0; j < ref.size() && !done(); ++j) {
      if (has_cont && j == cont) continue;
      try_pair(i, j);
    }

    if (!done() && feasible()) dfs(i + 1);

    ++hyp_avail_stem[stm];
    ++hyp_avail_class[cls];
  }
};

std::map<std::string, int> count_by(const Tokens& tokens) {
  std::map<std::string, int> counts;
  for (const std::string& t : tokens) ++counts[t];
  return counts;
}

}  // namespace

MeteorAlignment meteor_align(const Tokens& hyp, const Tokens& ref,
                             const std::vector<MeteorStage>& stages) {
  if (stages.empty()) throw std::invalid_argument("meteor: stages must be non-empty");
  bool use_exact = false, use_stem = false;
  for (MeteorStage s : stages) {
    if (s == MeteorStage::exact) use_exact = true;
    if (s == MeteorStage::stem) use_stem = true;
  }
  if (use_exact && use_stem &&
      (stages.size() != 2 || stages[0] != MeteorStage::exact))
    throw std::invalid_argument("meteor: stages must be ordered exact, stem");

  AlignSearch search(hyp, ref);
  search.use_exact = use_exact;
  search.use_stem = use_stem;
  search.hyp_stem.reserve(hyp.size());
  for (const std::string& t : hyp) search.hyp_stem.push_back(porter_stem(t));
  search.ref_stem.reserve(ref.size());
  for (const std::string& t : ref) search.ref_stem.push_back(porter_stem(t));

  std::map<std::string, int> h_count = count_by(hyp);
  std::map<std::string, int> r_count = count_by(ref);
  std::map<std::string, int> h_resid = h_count;
  std::map<std::string, int> r_resid = r_count;

  int matches = 0;
  if (use_exact) {
    for (const auto& [c, hc] : h_count) {
      int budget = std::min(hc, get(r_count, c));
      if (budget > 0) {
        search.exact_rem[c] = budget;
        h_resid[c] -= budget;
        r_resid[c] -= budget;
        matches += budget;
      }
    }
  }
  if (use_stem) {
    std::map<std::string, int> h_by_stem, r_by_stem;
    for (const auto& [c, n] : h_resid)
      if (n > 0) h_by_stem[porter_stem(c)] += n;
    for (const auto& [c, n] : r_resid)
      if (n > 0) r_by_stem[porter_stem(c)] += n;
    for (const auto& [s, hn] : h_by_stem) {
      int budget = std::min(hn, get(r_by_stem, s));
      if (budget > 0) {
        search.stem_rem[s] = budget;
        matches += budget;
      }
    }
  }
  if (matches == 0) return {0, 0};

  for (std::size_t i = 0; i < hyp.size(); ++i) {
    ++search.hyp_avail_class[hyp[i]];
    ++search.hyp_avail_stem[search.hyp_stem[i]];
  }
  for (std::size_t j = 0; j < ref.size(); ++j) {
    ++search.ref_free_class[ref[j]];
    ++search.ref_free_stem[search.ref_stem[j]];
  }
  for (const auto& [c, rem] : search.exact_rem)
    search.exact_rem_by_stem[porter_stem(c)] += rem;

  search.need = matches;
  search.best_chunks = matches + 1;  // chunks never exceed matches
  search.ref_used.assign(ref.size(), 0);
  search.dfs(0);

  return {matches, search.best_chunks};
}

double meteor(const Tokens& hyp, const Tokens& ref, const MeteorParams& params) {
  if (params.alpha <= 0 || params.alpha >= 1)
    throw std::invalid_argument("meteor: alpha must be in (0,1)");
  if (params.beta <= 0) throw std::invalid_argument("meteor: beta must be > 0");
  if (params.gamma < 0 || params.gamma > 1)
    throw std::invalid_argument("meteor: gamma must be in [0,1]");
  if (hyp.empty()) throw PairScoringError("meteor: empty hypothesis");
  if (ref.empty()) throw PairScoringError("meteor: empty reference");

  MeteorAlignment align = meteor_align(hyp, ref, params.stages);
  if (align.matches == 0) return 0.0;
  double m = static_cast<double>(align.matches);
  double p = m / static_cast<double>(hyp.size());
  double r = m / static_cast<double>(ref.size());
  double f = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
  double penalty =
      params.gamma * std::pow(static_cast<double>(align.chunks) / m, params.beta);
  return f * (1.0 - penalty);
}

}  // namespace dialeval
