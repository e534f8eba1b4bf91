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
#include <cmath>
#include <random>
#include <set>

#include "dialeval/errors.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace dialeval;

namespace {

MultiRefRecord record_with(const std::string& id, const std::string& ref,
                           std::vector<std::string> collected = {}) {
  MultiRefRecord rec;
  rec.context.context_id = id;
  rec.context.turns = {testutil::utt("ctx")};
  rec.original_ref = testutil::utt(ref);
  for (const std::string& c : collected) rec.collected_refs.push_back(testutil::utt(c));
  return rec;
}

HypothesisRecord hyp_with(const std::string& id, const std::string& model,
                          std::vector<std::string> texts) {
  HypothesisRecord h;
  h.context_id = id;
  h.model_id = model;
  for (const std::string& t : texts) h.hypotheses.push_back(testutil::utt(t));
  return h;
}

}  // namespace

TEST_CASE("corpus_quality scores the first hypothesis per record") {
  std::vector<MultiRefRecord> dataset{record_with("c1", "a b c")};
  std::vector<HypothesisRecord> hyps{hyp_with("c1", "m", {"a b c", "x y"})};
  std::vector<MetricSpec> metrics{MetricSpec{MetricFamily::bleu2}};

  QualityReport report =
      corpus_quality(dataset, hyps, metrics, ScoreMode::single, {1});
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].hyp_index == 0);
  CHECK(*report.rows[0].single_score == 1.0);
  CHECK(*report.rows[0].multi_score == 1.0);
  REQUIRE(report.aggregates.size() == 1);
  CHECK(*report.aggregates[0].mean == 1.0);
  CHECK(report.aggregates[0].n == 1);
}

TEST_CASE("corpus_quality arithmetic mean over contexts") {
  // cosine scores engineered to exactly 0.2 and 0.4
  EmbeddingTable table;
  table.insert("h", {1.0, 0.0});
  table.insert("p", {0.2, std::sqrt(1.0 - 0.04)});
  table.insert("q", {0.4, std::sqrt(1.0 - 0.16)});
  std::vector<MultiRefRecord> dataset{record_with("c1", "p"), record_with("c2", "q")};
  std::vector<HypothesisRecord> hyps{hyp_with("c1", "m", {"h"}),
                                     hyp_with("c2", "m", {"h"})};
  MetricSpec avg{MetricFamily::emb_average};
  avg.embeddings = &table;

  QualityReport report = corpus_quality(dataset, hyps, {avg}, ScoreMode::multi, {1});
  REQUIRE(report.aggregates.size() == 1);
  CHECK(*report.aggregates[0].mean == doctest::Approx(0.3));
  CHECK(report.aggregates[0].n == 2);
}

TEST_CASE("corpus_quality marks unscorable pairs missing, not zero") {
  EmbeddingTable table;
  table.insert("a", {1.0, 0.0});
  std::vector<MultiRefRecord> dataset{record_with("c1", "a"), record_with("c2", "a")};
  std::vector<HypothesisRecord> hyps{hyp_with("c1", "m", {"zzz"}),
                                     hyp_with("c2", "m", {"a"})};
  MetricSpec avg{MetricFamily::emb_average};
  avg.embeddings = &table;

  QualityReport report = corpus_quality(dataset, hyps, {avg}, ScoreMode::multi, {1});
  CHECK(!report.rows[0].multi_score.has_value());
  CHECK(report.rows[1].multi_score.has_value());
  REQUIRE(report.aggregates.size() == 1);
  CHECK(report.aggregates[0].n == 1);
  CHECK(*report.aggregates[0].mean == doctest::Approx(1.0));
}

TEST_CASE("corpus_quality multi dominates single on every row") {
  std::mt19937 rng(3);
  testutil::SyntheticCorpus corpus = testutil::make_corpus(rng, 25, 2);
  std::vector<MetricSpec> metrics;
  for (MetricFamily family :
       {MetricFamily::bleu1, MetricFamily::bleu2, MetricFamily::meteor,
        MetricFamily::rouge_l, MetricFamily::emb_average, MetricFamily::vector_extrema,
        MetricFamily::greedy_matching, MetricFamily::sent_embedding}) {
    MetricSpec spec{family};
    spec.embeddings = &corpus.table;
    spec.sentence_embeddings = &corpus.provider;
    metrics.push_back(spec);
  }
  QualityReport report =
      corpus_quality(corpus.dataset, corpus.hyps, metrics, ScoreMode::multi, {1});
  for (const QualityRow& row : report.rows) {
    REQUIRE(row.single_score.has_value());
    REQUIRE(row.multi_score.has_value());
    CHECK(*row.multi_score >= *row.single_score);
  }
}

TEST_CASE("corpus_quality input validation") {
  std::vector<MultiRefRecord> dataset{record_with("c1", "a")};
  std::vector<MetricSpec> metrics{MetricSpec{MetricFamily::bleu1}};
  CHECK_THROWS_AS(corpus_quality(dataset, {}, metrics, ScoreMode::multi, {1}),
                  ValidationError);
  CHECK_THROWS_AS(corpus_quality(dataset, {hyp_with("ghost", "m", {"a"})}, metrics,
                                 ScoreMode::multi, {1}),
                  ValidationError);
  CHECK_THROWS_AS(
      corpus_quality(dataset, {hyp_with("c1", "m", {"a"})}, {}, ScoreMode::multi, {1}),
      ValidationError);
}

TEST_CASE("recall_diversity spec examples") {
  MetricSpec bleu2{MetricFamily::bleu2};
  std::vector<Utterance> refs = {testutil::utt("a b c"), testutil::utt("d e f")};
  // Y = R: every reference matched exactly
  CHECK(recall_diversity(bleu2, refs, refs) == doctest::Approx(1.0));

  // one hypothesis, references scoring 0.4 and 0.8
  EmbeddingTable table;
  table.insert("h", {1.0, 0.0});
  table.insert("p", {0.4, std::sqrt(1.0 - 0.16)});
  table.insert("q", {0.8, 0.6});
  MetricSpec avg{MetricFamily::emb_average};
  avg.embeddings = &table;
  CHECK(recall_diversity(avg, {testutil::utt("h")},
                         {testutil::utt("p"), testutil::utt("q")}) ==
        doctest::Approx(0.6));

  // negative cosine clamps to zero
  EmbeddingTable neg;
  neg.insert("h", {1.0, 0.0});
  neg.insert("n", {-0.5, std::sqrt(0.75)});
  MetricSpec avg_neg{MetricFamily::emb_average};
  avg_neg.embeddings = &neg;
  CHECK(recall_diversity(avg_neg, {testutil::utt("h")}, {testutil::utt("n")}) == 0.0);

  CHECK_THROWS_AS(recall_diversity(bleu2, {}, refs), PairScoringError);
  CHECK_THROWS_AS(recall_diversity(bleu2, refs, {}), PairScoringError);
}

TEST_CASE("recall_diversity is monotone in the hypothesis set") {
  std::mt19937 rng(41);
  MetricSpec bleu2{MetricFamily::bleu2};
  MetricSpec rouge{MetricFamily::rouge_l};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Utterance> refs, hyps;
    int nrefs = 1 + static_cast<int>(rng() % 3);
    int nhyps = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nrefs; ++i)
      refs.push_back(testutil::utt(testutil::join_tokens(testutil::random_sentence(rng))));
    for (int i = 0; i < nhyps; ++i)
      hyps.push_back(testutil::utt(testutil::join_tokens(testutil::random_sentence(rng))));
    for (const MetricSpec& metric : {bleu2, rouge}) {
      double before = recall_diversity(metric, hyps, refs);
      std::vector<Utterance> grown = hyps;
      grown.push_back(
          testutil::utt(testutil::join_tokens(testutil::random_sentence(rng))));
      double after = recall_diversity(metric, grown, refs);
      CHECK(after >= before - 1e-15);
      CHECK(before >= 0.0);
      CHECK(after <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("recall_diversity is 1 when hypotheses cover the references") {
  std::mt19937 rng(43);
  MetricSpec bleu2{MetricFamily::bleu2};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Utterance> refs;
    int nrefs = 1 + static_cast<int>(rng() % 3);
    // references at least as long as the n-gram order so d(x, x) = 1
    for (int i = 0; i < nrefs; ++i)
      refs.push_back(
          testutil::utt(testutil::join_tokens(testutil::random_sentence(rng, 8, 5, 2))));
    std::vector<Utterance> hyps = refs;
    hyps.push_back(testutil::utt(testutil::join_tokens(testutil::random_sentence(rng))));
    CHECK(recall_diversity(bleu2, hyps, refs) == doctest::Approx(1.0));
  }
}

TEST_CASE("distinct_n examples") {
  std::vector<Tokens> ab_ac = {{"a", "b"}, {"a", "c"}};
  CHECK(distinct_n(ab_ac, 1, DistinctDenominator::tokens) == doctest::Approx(0.75));
  std::vector<Tokens> ab_ab = {{"a", "b"}, {"a", "b"}};
  CHECK(distinct_n(ab_ab, 2, DistinctDenominator::ngrams) == doctest::Approx(0.5));
  std::vector<Tokens> aa = {{"a", "a"}};
  CHECK(distinct_n(aa, 1, DistinctDenominator::tokens) == doctest::Approx(0.5));

  CHECK_THROWS_AS(distinct_n({}, 1), ValidationError);
  // every response shorter than n
  CHECK_THROWS_AS(distinct_n({{"a"}}, 2, DistinctDenominator::ngrams), ValidationError);
}

TEST_CASE("distinct_n tokens-mode bounds") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Tokens> responses;
    int n = 1 + static_cast<int>(rng() % 3);
    bool repeats = false;
    std::set<std::string> seen;
    for (int i = 0; i < n; ++i) {
      Tokens t = testutil::random_sentence(rng, 5, 6);
      for (const std::string& tok : t)
        if (!seen.insert(tok).second) repeats = true;
      responses.push_back(std::move(t));
    }
    double d = distinct_n(responses, 1, DistinctDenominator::tokens);
    CHECK(d > 0.0);
    CHECK(d <= 1.0);
    CHECK((d == 1.0) == !repeats);
  }
}

TEST_CASE("self_bleu examples") {
  std::vector<Tokens> identical = {{"a", "b"}, {"a", "b"}, {"a", "b"}};
  CHECK(self_bleu(identical, 2) == doctest::Approx(1.0));

  std::vector<Tokens> mixed = {{"a", "b"}, {"a", "b"}, {"c", "d"}};
  double third = std::sqrt(0.05 * 0.1);
  CHECK(self_bleu(mixed, 2) == doctest::Approx((1.0 + 1.0 + third) / 3.0));
  CHECK(self_bleu(mixed, 2) == doctest::Approx(0.6902).epsilon(2e-4));

  std::vector<Tokens> disjoint = {{"a", "b", "c"}, {"d", "e", "f"}};
  CHECK(self_bleu(disjoint, 2) == doctest::Approx(std::sqrt(0.1 / 3.0 * 0.1 / 2.0)));

  CHECK_THROWS_AS(self_bleu({{"a"}}, 2), ValidationError);
}

TEST_CASE("self_bleu is permutation invariant and detects identity") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Tokens> responses;
    int n = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i)
      responses.push_back(testutil::random_sentence(rng, 6, 4, 2));
    double base = self_bleu(responses, 2);
    std::shuffle(responses.begin(), responses.end(), rng);
    CHECK(self_bleu(responses, 2) == doctest::Approx(base).epsilon(1e-12));

    bool all_same = std::all_of(responses.begin(), responses.end(),
                                [&](const Tokens& t) { return t == responses[0]; });
    if (all_same) {
      CHECK(base == doctest::Approx(1.0));
    } else {
      CHECK(base < 1.0);
    }
  }
}

TEST_CASE("gt_bleu examples") {
  SUBCASE("identical collected reference contributes 1") {
    std::vector<MultiRefRecord> dataset{record_with("c1", "a b c", {"a b c"})};
    std::vector<double> means = gt_bleu(dataset, 2);
    CHECK(means[0] == doctest::Approx(1.0));
    CHECK(means[1] == doctest::Approx(1.0));
  }
  SUBCASE("mean over pairs") {
    // BLEU-1: "a b" vs "a b" = 1.0; "c d" vs "c e" = 0.5
    std::vector<MultiRefRecord> dataset{record_with("c1", "a b", {"a b"}),
                                        record_with("c2", "c e", {"c d"})};
    std::vector<double> means = gt_bleu(dataset, 1);
    CHECK(means[0] == doctest::Approx(0.75));
  }
  SUBCASE("record without collected references is an error") {
    std::vector<MultiRefRecord> dataset{record_with("c1", "a b", {})};
    CHECK_THROWS_WITH_AS(gt_bleu(dataset, 2), doctest::Contains("c1"), ValidationError);
  }
}

TEST_CASE("corpus_diversity assembles per-model aggregates") {
  std::vector<MultiRefRecord> dataset{record_with("c1", "a b", {"c d"}),
                                      record_with("c2", "e f", {"g h"})};
  std::vector<HypothesisRecord> hyps{
      hyp_with("c1", "m1", {"a b", "c d"}),
      hyp_with("c2", "m1", {"e f", "g h"}),
      hyp_with("c1", "m0", {"a b"}),
  };
  std::vector<MetricSpec> metrics{MetricSpec{MetricFamily::bleu2}};
  DiversityReport report = corpus_diversity(dataset, hyps, metrics,
                                            DistinctDenominator::ngrams, 0.1, {1});

  REQUIRE(report.models.size() == 2);
  CHECK(report.models[0].model_id == "m0");  // sorted order
  CHECK(report.models[1].model_id == "m1");

  // m1 covers every reference verbatim in both contexts
  CHECK(*report.models[1].mean_recall.at("bleu2") == doctest::Approx(1.0));
  // m0 has a single response per context: no self-BLEU contexts
  CHECK(report.models[0].self_bleu_contexts == 0);
  CHECK(!report.models[0].mean_self_bleu[1].has_value());
  CHECK(report.models[1].self_bleu_contexts == 2);
  // all m1 responses are distinct bigrams
  CHECK(*report.models[1].distinct[1] == doctest::Approx(1.0));

  REQUIRE(report.rows.size() == hyps.size() * metrics.size());
  CHECK(report.rows[0].n_references == 2);
  CHECK(report.rows[0].n_hypotheses == 2);
}
