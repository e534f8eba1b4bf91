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

#include <string>
#include <vector>

#include "dialeval/corpus.hpp"
#include "dialeval/embedding.hpp"
#include "dialeval/overlap.hpp"

namespace dialeval {

enum class MetricFamily {
  bleu1,
  bleu2,
  bleu3,
  bleu4,
  meteor,
  rouge_l,
  emb_average,
  vector_extrema,
  greedy_matching,
  sent_embedding,
};

MetricFamily parse_metric_family(const std::string& name);
std::string to_string(MetricFamily family);
std::vector<MetricFamily> all_metric_families();

bool needs_word_embeddings(MetricFamily family);
bool needs_sentence_embeddings(MetricFamily family);
// Cosine-valued metrics range over [-1,1]; recall scoring clamps them at 0.
bool cosine_based(MetricFamily family);

struct MetricParams {
  double bleu_epsilon = 0.1;
  MeteorParams meteor;
  RougeParams rouge;
};

// A fully resolved metric: family, numeric parameters and the resources it
// scores with. Resource pointers must outlive the spec.
struct MetricSpec {
  MetricFamily family = MetricFamily::bleu2;
  MetricParams params;
  const EmbeddingTable* embeddings = nullptr;
  const SentenceEmbeddingProvider* sentence_embeddings = nullptr;

  std::string name() const { return to_string(family); }
};

// d(y, r) for one hypothesis/reference pair. Throws PairScoringError when
// the pair cannot be scored (e.g. all tokens out of vocabulary).
double pair_score(const MetricSpec& metric, const Utterance& hyp, const Utterance& ref);

// Max over references of pair_score. References that fail to score are
// skipped; it is an error only if every reference is unusable.
double multi_ref_score(const MetricSpec& metric, const Utterance& hyp,
                       const std::vector<Utterance>& refs);

}  // namespace dialeval
