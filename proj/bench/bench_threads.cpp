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

// Compares the serial reference path (threads = 1) against the OpenMP
// kernels on a synthetic corpus and verifies that both produce identical
// reports. Usage: bench_threads [contexts] [models]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include "dialeval/evaluate.hpp"

#include "../tests/testutil.hpp"

using namespace dialeval;

namespace {

double time_s(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool same_rows(const QualityReport& a, const QualityReport& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].single_score != b.rows[i].single_score) return false;
    if (a.rows[i].multi_score != b.rows[i].multi_score) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int contexts = argc > 1 ? std::atoi(argv[1]) : 400;
  int models = argc > 2 ? std::atoi(argv[2]) : 3;

  std::mt19937 rng(12345);
  testutil::SyntheticCorpus corpus = testutil::make_corpus(rng, contexts, models, 4, 3);
  std::vector<MetricSpec> metrics;
  for (MetricFamily family : {MetricFamily::bleu2, MetricFamily::meteor,
                              MetricFamily::rouge_l, MetricFamily::greedy_matching}) {
    MetricSpec spec{family};
    spec.embeddings = &corpus.table;
    metrics.push_back(spec);
  }

  std::cout << "corpus: " << contexts << " contexts x " << models << " models, "
            << metrics.size() << " metrics\n";

  QualityReport serial_q, parallel_q;
  double t_serial = time_s([&] {
    serial_q = corpus_quality(corpus.dataset, corpus.hyps, metrics, ScoreMode::multi, {1});
  });
  double t_parallel = time_s([&] {
    parallel_q =
        corpus_quality(corpus.dataset, corpus.hyps, metrics, ScoreMode::multi, {0});
  });
  std::cout << "quality    serial " << t_serial << "s   openmp " << t_parallel
            << "s   speedup " << t_serial / t_parallel << "x   identical: "
            << (same_rows(serial_q, parallel_q) ? "yes" : "NO") << "\n";

  DiversityReport serial_d, parallel_d;
  double td_serial = time_s([&] {
    serial_d = corpus_diversity(corpus.dataset, corpus.hyps, metrics,
                                DistinctDenominator::ngrams, 0.1, {1});
  });
  double td_parallel = time_s([&] {
    parallel_d = corpus_diversity(corpus.dataset, corpus.hyps, metrics,
                                  DistinctDenominator::ngrams, 0.1, {0});
  });
  bool d_same = serial_d.rows.size() == parallel_d.rows.size();
  for (std::size_t i = 0; d_same && i < serial_d.rows.size(); ++i)
    d_same = serial_d.rows[i].recall == parallel_d.rows[i].recall;
  std::cout << "diversity  serial " << td_serial << "s   openmp " << td_parallel
            << "s   speedup " << td_serial / td_parallel << "x   identical: "
            << (d_same ? "yes" : "NO") << "\n";

  return same_rows(serial_q, parallel_q) && d_same ? 0 : 1;
}
