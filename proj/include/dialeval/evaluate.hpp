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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dialeval/metric.hpp"
#include "dialeval/parallel.hpp"

namespace dialeval {

enum class ScoreMode { single, multi };

ScoreMode parse_score_mode(const std::string& name);
std::string to_string(ScoreMode mode);

// One scored hypothesis. Both columns are always computed: `single` against
// the original reference only, `multi` as the max over the full reference
// set. A missing value means the pair could not be scored (e.g. all tokens
// out of vocabulary); such rows are excluded from means, never counted as 0.
struct QualityRow {
  std::string context_id;
  std::string model_id;
  int hyp_index = 0;
  std::string metric;
  std::optional<double> single_score;
  std::optional<double> multi_score;
};

struct ModelMetricMean {
  std::string model_id;
  std::string metric;
  std::optional<double> mean;
  std::size_t n = 0;  // rows with a score
};

struct QualityReport {
  ScoreMode mode = ScoreMode::multi;
  std::vector<std::string> metrics;
  std::vector<QualityRow> rows;              // input order x metric order
  std::vector<ModelMetricMean> aggregates;   // sorted by (model_id, metric)
};

// Scores the first hypothesis of every record against its context's
// references. Contexts are scored concurrently under `exec`; rows and
// aggregates are assembled in input order regardless of thread count.
QualityReport corpus_quality(const std::vector<MultiRefRecord>& dataset,
                             const std::vector<HypothesisRecord>& hyps,
                             const std::vector<MetricSpec>& metrics, ScoreMode mode,
                             const ExecPolicy& exec = {});

// Mean over references of the best normalized hypothesis score. Scores are
// normalized into [0,1]: overlap metrics are already in range, cosine-valued
// metrics are clamped at 0. References that no hypothesis can score are
// skipped; it is an error if every reference is skipped.
double recall_diversity(const MetricSpec& metric, const std::vector<Utterance>& hypotheses,
                        const std::vector<Utterance>& references);

enum class DistinctDenominator { tokens, ngrams };

DistinctDenominator parse_distinct_denominator(const std::string& name);
std::string to_string(DistinctDenominator denom);

// Distinct n-gram types across all responses over the configured size
// denominator; computed at system level across contexts.
double distinct_n(const std::vector<Tokens>& responses, std::size_t n,
                  DistinctDenominator denom = DistinctDenominator::ngrams);

// Each response scored by sentence_bleu against its sibling responses as a
// multi-reference set, averaged over responses. Requires >= 2 responses.
double self_bleu(const std::vector<Tokens>& responses, int max_n, double epsilon = 0.1);

// Mean over all (collected reference, original reference) pairs of
// sentence_bleu with the collected reference as hypothesis, for each order
// n = 1..max_n (index n-1). Every record must have a collected reference.
std::vector<double> gt_bleu(const std::vector<MultiRefRecord>& dataset, int max_n,
                            double epsilon = 0.1);

struct RecallRow {
  std::string context_id;
  std::string model_id;
  std::string metric;
  std::optional<double> recall;
  std::size_t n_references = 0;  // M
  std::size_t n_hypotheses = 0;  // N
};

struct ModelDiversity {
  std::string model_id;
  std::array<std::optional<double>, 3> distinct{};        // n = 1..3
  std::array<std::optional<double>, 4> mean_self_bleu{};  // n = 1..4
  std::size_t self_bleu_contexts = 0;  // contexts with >= 2 responses
  std::map<std::string, std::optional<double>> mean_recall;
};

struct DiversityReport {
  DistinctDenominator denominator = DistinctDenominator::ngrams;
  std::vector<RecallRow> rows;
  std::vector<ModelDiversity> models;  // sorted by model_id
};

// Referenced recall per (context, model, metric) over all hypotheses, plus
// per-model Distinct-1/2/3 and mean Self-BLEU-1..4.
DiversityReport corpus_diversity(const std::vector<MultiRefRecord>& dataset,
                                 const std::vector<HypothesisRecord>& hyps,
                                 const std::vector<MetricSpec>& metrics,
                                 DistinctDenominator denom, double bleu_epsilon = 0.1,
                                 const ExecPolicy& exec = {});

}  // namespace dialeval
