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

#include "dialeval/evaluate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "dialeval/errors.hpp"

namespace dialeval {

ScoreMode parse_score_mode(const std::string& name) {
  if (name == "single") return ScoreMode::single;
  if (name == "multi") return ScoreMode::multi;
  throw ValidationError("unknown mode '" + name + "'");
}

std::string to_string(ScoreMode mode) {
  return mode == ScoreMode::single ? "single" : "multi";
}

DistinctDenominator parse_distinct_denominator(const std::string& name) {
  if (name == "tokens") return DistinctDenominator::tokens;
  if (name == "ngrams") return DistinctDenominator::ngrams;
  throw ValidationError("unknown distinct denominator '" + name + "'");
}

std::string to_string(DistinctDenominator denom) {
  return denom == DistinctDenominator::tokens ? "tokens" : "ngrams";
}

namespace {

std::unordered_map<std::string, const MultiRefRecord*> index_dataset(
    const std::vector<MultiRefRecord>& dataset) {
  std::unordered_map<std::string, const MultiRefRecord*> by_id;
  for (const MultiRefRecord& rec : dataset) by_id[rec.context.context_id] = &rec;
  return by_id;
}

const MultiRefRecord& resolve(
    const std::unordered_map<std::string, const MultiRefRecord*>& by_id,
    const std::string& context_id) {
  auto it = by_id.find(context_id);
  if (it == by_id.end())
    throw ValidationError("hypothesis context_id '" + context_id +
                          "' not present in dataset");
  return *it->second;
}

std::optional<double> try_score(const std::function<double()>& fn) {
  try {
    return fn();
  } catch (const PairScoringError&) {
    return std::nullopt;
  }
}

}  // namespace

QualityReport corpus_quality(const std::vector<MultiRefRecord>& dataset,
                             const std::vector<HypothesisRecord>& hyps,
                             const std::vector<MetricSpec>& metrics, ScoreMode mode,
                             const ExecPolicy& exec) {
  if (metrics.empty()) throw ValidationError("corpus_quality: no metrics given");
  if (hyps.empty())
    throw ValidationError("corpus_quality: no hypotheses overlap the dataset");
  auto by_id = index_dataset(dataset);
  for (const HypothesisRecord& h : hyps) resolve(by_id, h.context_id);

  QualityReport report;
  report.mode = mode;
  for (const MetricSpec& m : metrics) report.metrics.push_back(m.name());
  report.rows.resize(hyps.size() * metrics.size());

  for_each_index(hyps.size(), exec, [&](std::size_t i) {
    const HypothesisRecord& h = hyps[i];
    const MultiRefRecord& rec = *by_id.at(h.context_id);
    const Utterance& hyp = h.hypotheses.front();
    std::vector<Utterance> refs = rec.all_refs();
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      QualityRow& row = report.rows[i * metrics.size() + m];
      row.context_id = h.context_id;
      row.model_id = h.model_id;
      row.hyp_index = 0;
      row.metric = metrics[m].name();
      row.single_score =
          try_score([&] { return pair_score(metrics[m], hyp, rec.original_ref); });
      row.multi_score =
          try_score([&] { return multi_ref_score(metrics[m], hyp, refs); });
    }
  });

  std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> sums;
  for (const QualityRow& row : report.rows) {
    const std::optional<double>& score =
        mode == ScoreMode::single ? row.single_score : row.multi_score;
    auto& [sum, n] = sums[{row.model_id, row.metric}];
    if (score) {
      sum += *score;
      ++n;
    }
  }
  for (const auto& [key, acc] : sums) {
    ModelMetricMean mean;
    mean.model_id = key.first;
    mean.metric = key.second;
    mean.n = acc.second;
    if (acc.second > 0) mean.mean = acc.first / static_cast<double>(acc.second);
    report.aggregates.push_back(std::move(mean));
  }
  return report;
}

double recall_diversity(const MetricSpec& metric, const std::vector<Utterance>& hypotheses,
                        const std::vector<Utterance>& references) {
  if (hypotheses.empty()) throw PairScoringError("recall_diversity: empty hypothesis set");
  if (references.empty()) throw PairScoringError("recall_diversity: empty reference set");
  bool clamp = cosine_based(metric.family);
  double sum = 0;
  std::size_t usable = 0;
  for (const Utterance& ref : references) {
    bool any = false;
    double best = 0;
    for (const Utterance& hyp : hypotheses) {
      double s;
      try {
        s = pair_score(metric, hyp, ref);
      } catch (const PairScoringError&) {
        continue;
      }
      if (clamp) s = std::max(0.0, s);
      if (!any || s > best) best = s;
      any = true;
    }
    if (any) {
      sum += best;
      ++usable;
    }
  }
  if (usable == 0) throw PairScoringError("recall_diversity: no scorable reference");
  return sum / static_cast<double>(usable);
}

double distinct_n(const std::vector<Tokens>& responses, std::size_t n,
                  DistinctDenominator denom) {
  if (responses.empty()) throw ValidationError("distinct_n: empty response set");
  std::set<Ngram> unique;
  std::size_t total_tokens = 0;
  std::size_t total_ngrams = 0;
  for (const Tokens& resp : responses) {
    total_tokens += resp.size();
    for (const auto& [gram, count] : ngrams(resp, n)) {
      unique.insert(gram);
      total_ngrams += static_cast<std::size_t>(count);
    }
  }
  std::size_t denominator =
      denom == DistinctDenominator::tokens ? total_tokens : total_ngrams;
  if (denominator == 0)
    throw ValidationError("distinct_n: no response long enough for n = " +
                          std::to_string(n));
  return static_cast<double>(unique.size()) / static_cast<double>(denominator);
}

double self_bleu(const std::vector<Tokens>& responses, int max_n, double epsilon) {
  if (responses.size() < 2)
    throw ValidationError("self_bleu: need at least 2 responses");
  double sum = 0;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    std::vector<Tokens> others;
    others.reserve(responses.size() - 1);
    for (std::size_t j = 0; j < responses.size(); ++j)
      if (j != i) others.push_back(responses[j]);
    sum += sentence_bleu(responses[i], others, {max_n, epsilon});
  }
  return sum / static_cast<double>(responses.size());
}

std::vector<double> gt_bleu(const std::vector<MultiRefRecord>& dataset, int max_n,
                            double epsilon) {
  if (dataset.empty()) throw ValidationError("gt_bleu: empty dataset");
  for (const MultiRefRecord& rec : dataset) {
    if (rec.collected_refs.empty())
      throw ValidationError("gt_bleu: context '" + rec.context.context_id +
                            "' has no collected references");
  }
  std::vector<double> sums(static_cast<std::size_t>(max_n), 0.0);
  std::size_t pairs = 0;
  for (const MultiRefRecord& rec : dataset) {
    for (const Utterance& collected : rec.collected_refs) {
      for (int n = 1; n <= max_n; ++n) {
        sums[n - 1] +=
            sentence_bleu(collected.tokens, {rec.original_ref.tokens}, {n, epsilon});
      }
      ++pairs;
    }
  }
  for (double& s : sums) s /= static_cast<double>(pairs);
  return sums;
}

DiversityReport corpus_diversity(const std::vector<MultiRefRecord>& dataset,
                                 const std::vector<HypothesisRecord>& hyps,
                                 const std::vector<MetricSpec>& metrics,
                                 DistinctDenominator denom, double bleu_epsilon,
                                 const ExecPolicy& exec) {
  if (hyps.empty())
    throw ValidationError("corpus_diversity: no hypotheses overlap the dataset");
  auto by_id = index_dataset(dataset);
  for (const HypothesisRecord& h : hyps) resolve(by_id, h.context_id);

  DiversityReport report;
  report.denominator = denom;
  report.rows.resize(hyps.size() * metrics.size());

  // Per-record self-BLEU values, filled concurrently with the recall rows.
  struct ContextSelfBleu {
    std::array<std::optional<double>, 4> by_n{};
  };
  std::vector<ContextSelfBleu> self_bleus(hyps.size());

  for_each_index(hyps.size(), exec, [&](std::size_t i) {
    const HypothesisRecord& h = hyps[i];
    const MultiRefRecord& rec = *by_id.at(h.context_id);
    std::vector<Utterance> refs = rec.all_refs();
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      RecallRow& row = report.rows[i * metrics.size() + m];
      row.context_id = h.context_id;
      row.model_id = h.model_id;
      row.metric = metrics[m].name();
      row.n_references = refs.size();
      row.n_hypotheses = h.hypotheses.size();
      row.recall =
          try_score([&] { return recall_diversity(metrics[m], h.hypotheses, refs); });
    }
    if (h.hypotheses.size() >= 2) {
      std::vector<Tokens> responses;
      responses.reserve(h.hypotheses.size());
      for (const Utterance& u : h.hypotheses) responses.push_back(u.tokens);
      for (int n = 1; n <= 4; ++n) {
        try {
          self_bleus[i].by_n[n - 1] = self_bleu(responses, n, bleu_epsilon);
        } catch (const PairScoringError&) {
          // context with an unscorable response: skipped for this order
        }
      }
    }
  });

  // Per-model reductions, done serially in deterministic order.
  std::set<std::string> model_ids;
  for (const HypothesisRecord& h : hyps) model_ids.insert(h.model_id);

  for (const std::string& model : model_ids) {
    ModelDiversity entry;
    entry.model_id = model;

    std::vector<Tokens> responses;
    for (const HypothesisRecord& h : hyps) {
      if (h.model_id != model) continue;
      for (const Utterance& u : h.hypotheses) responses.push_back(u.tokens);
    }
    for (std::size_t n = 1; n <= 3; ++n) {
      try {
        entry.distinct[n - 1] = distinct_n(responses, n, denom);
      } catch (const ValidationError&) {
        // all responses shorter than n
      }
    }

    std::array<double, 4> sb_sum{};
    std::array<std::size_t, 4> sb_n{};
    std::size_t sb_contexts = 0;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      if (hyps[i].model_id != model || hyps[i].hypotheses.size() < 2) continue;
      ++sb_contexts;
      for (int n = 0; n < 4; ++n) {
        if (self_bleus[i].by_n[n]) {
          sb_sum[n] += *self_bleus[i].by_n[n];
          ++sb_n[n];
        }
      }
    }
    entry.self_bleu_contexts = sb_contexts;
    for (int n = 0; n < 4; ++n)
      if (sb_n[n] > 0) entry.mean_self_bleu[n] = sb_sum[n] / static_cast<double>(sb_n[n]);

    for (const MetricSpec& metric : metrics) {
      double sum = 0;
      std::size_t n = 0;
      for (const RecallRow& row : report.rows) {
        if (row.model_id != model || row.metric != metric.name() || !row.recall) continue;
        sum += *row.recall;
        ++n;
      }
      entry.mean_recall[metric.name()] =
          n > 0 ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt;
    }
    report.models.push_back(std::move(entry));
  }
  return report;
}

}  // namespace dialeval
