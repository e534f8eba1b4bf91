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

#include "dialeval/metric.hpp"

#include <stdexcept>

#include "dialeval/errors.hpp"

namespace dialeval {

namespace {

struct FamilyName {
  MetricFamily family;
  const char* name;
};

constexpr FamilyName kFamilies[] = {
    {MetricFamily::bleu1, "bleu1"},
    {MetricFamily::bleu2, "bleu2"},
    {MetricFamily::bleu3, "bleu3"},
    {MetricFamily::bleu4, "bleu4"},
    {MetricFamily::meteor, "meteor"},
    {MetricFamily::rouge_l, "rouge_l"},
    {MetricFamily::emb_average, "emb_average"},
    {MetricFamily::vector_extrema, "vector_extrema"},
    {MetricFamily::greedy_matching, "greedy_matching"},
    {MetricFamily::sent_embedding, "sent_embedding"},
};

int bleu_order(MetricFamily family) {
  switch (family) {
    case MetricFamily::bleu1: return 1;
    case MetricFamily::bleu2: return 2;
    case MetricFamily::bleu3: return 3;
    case MetricFamily::bleu4: return 4;
    default: return 0;
  }
}

}  // namespace

MetricFamily parse_metric_family(const std::string& name) {
  for (const FamilyName& f : kFamilies)
    if (name == f.name) return f.family;
  throw ValidationError("unknown metric '" + name + "'");
}

std::string to_string(MetricFamily family) {
  for (const FamilyName& f : kFamilies)
    if (family == f.family) return f.name;
  return "?";
}

std::vector<MetricFamily> all_metric_families() {
  std::vector<MetricFamily> out;
  for (const FamilyName& f : kFamilies) out.push_back(f.family);
  return out;
}

bool needs_word_embeddings(MetricFamily family) {
  return family == MetricFamily::emb_average || family == MetricFamily::vector_extrema ||
         family == MetricFamily::greedy_matching;
}

bool needs_sentence_embeddings(MetricFamily family) {
  return family == MetricFamily::sent_embedding;
}

bool cosine_based(MetricFamily family) {
  return needs_word_embeddings(family) || needs_sentence_embeddings(family);
}

double pair_score(const MetricSpec& metric, const Utterance& hyp, const Utterance& ref) {
  if (needs_word_embeddings(metric.family) && !metric.embeddings)
    throw std::invalid_argument("metric '" + metric.name() +
                                "' requires a word embedding table");
  if (needs_sentence_embeddings(metric.family) && !metric.sentence_embeddings)
    throw std::invalid_argument("metric '" + metric.name() +
                                "' requires a sentence embedding provider");

  switch (metric.family) {
    case MetricFamily::bleu1:
    case MetricFamily::bleu2:
    case MetricFamily::bleu3:
    case MetricFamily::bleu4:
      return sentence_bleu(hyp.tokens, {ref.tokens},
                           {bleu_order(metric.family), metric.params.bleu_epsilon});
    case MetricFamily::meteor:
      return meteor(hyp.tokens, ref.tokens, metric.params.meteor);
    case MetricFamily::rouge_l:
      return rouge_l(hyp.tokens, ref.tokens, metric.params.rouge);
    case MetricFamily::emb_average:
      return embedding_metric(hyp.tokens, ref.tokens, *metric.embeddings,
                              VectorKind::average);
    case MetricFamily::vector_extrema:
      return embedding_metric(hyp.tokens, ref.tokens, *metric.embeddings,
                              VectorKind::extrema);
    case MetricFamily::greedy_matching:
      return greedy_matching(hyp.tokens, ref.tokens, *metric.embeddings);
    case MetricFamily::sent_embedding:
      return sentence_embedding_cosine(hyp.raw, ref.raw, *metric.sentence_embeddings);
  }
  throw std::logic_error("unreachable metric family");
}

double multi_ref_score(const MetricSpec& metric, const Utterance& hyp,
                       const std::vector<Utterance>& refs) {
  if (refs.empty()) throw PairScoringError("multi_ref_score: empty reference set");
  bool any = false;
  double best = 0.0;
  for (const Utterance& ref : refs) {
    double s;
    try {
      s = pair_score(metric, hyp, ref);
    } catch (const PairScoringError&) {
      continue;
    }
    if (!any || s > best) best = s;
    any = true;
  }
  if (!any) throw PairScoringError("multi_ref_score: no usable reference");
  return best;
}

}  // namespace dialeval
