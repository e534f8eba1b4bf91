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

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dialeval/evaluate.hpp"

namespace dialeval {

struct CorrelationResult {
  double coefficient = 0;
  double p_value = 1;
  std::size_t n = 0;
};

// Ranks 1..n with ties assigned the mean of the ranks they cover.
std::vector<double> fractional_ranks(std::span<const double> values);

// Regularized incomplete beta I_x(a, b), evaluated by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double dof);
// Two-sided tail probability of |T| >= |t| for T ~ t(dof).
double student_t_two_sided_p(double t, double dof);

enum class PValueMethod { t_approx, exact_permutation };

// Sample Pearson correlation with a two-sided p-value from
// t = r * sqrt((n-2) / (1-r^2)) against Student's t with n-2 dof.
// Requires n >= 3 and non-constant sequences.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Pearson over fractional ranks. exact_permutation enumerates all rank
// permutations (n <= 10 only) instead of the t approximation.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y,
                           PValueMethod method = PValueMethod::t_approx);

enum class KappaWeights { linear, quadratic };

KappaWeights parse_kappa_weights(const std::string& name);
std::string to_string(KappaWeights weights);

// Weighted Cohen's kappa for two category sequences over [1, categories]:
// kappa = 1 - sum(w*O) / sum(w*E), w_ij = (|i-j|/(k-1))^q.
double weighted_kappa(std::span<const int> a, std::span<const int> b, int categories,
                      KappaWeights weights);

struct KappaResult {
  std::map<std::string, double> mean_kappa;  // rater -> mean pairwise kappa
  std::set<std::string> retained;            // mean kappa >= threshold
};

// Mean pairwise weighted kappa per rater over commonly rated
// (context, model) items; raters below the threshold are dropped. All
// ratings must be of one kind; appropriateness uses 5 categories, diversity
// uses max(value)+1 categories (values shifted to 1-based).
KappaResult filter_raters(const std::vector<RatingRecord>& ratings,
                          double threshold = 0.2,
                          KappaWeights weights = KappaWeights::quadratic);

struct MetricCorrelation {
  std::string metric;
  CorrelationResult spearman;
  CorrelationResult pearson;
};

// Correlates the report's mode column against mean human appropriateness
// per (context, model) row. Ratings are expected to be already filtered.
std::vector<MetricCorrelation> utterance_correlation(
    const QualityReport& report, const std::vector<RatingRecord>& ratings,
    PValueMethod method = PValueMethod::t_approx);

struct SystemScatterRow {
  std::string model_id;
  double mean_rating = 0;
  std::map<std::string, double> mean_metric;
};

struct SystemCorrelationResult {
  std::vector<MetricCorrelation> per_metric;
  std::vector<SystemScatterRow> scatter;          // sorted by model_id
  std::vector<std::string> models_without_ratings;  // excluded from the fit
};

// Correlates per-model mean metric scores against per-model mean ratings.
SystemCorrelationResult system_correlation(const QualityReport& report,
                                           const std::vector<RatingRecord>& ratings,
                                           PValueMethod method = PValueMethod::t_approx);

enum class ReferencePolicy { original_first, random };

ReferencePolicy parse_reference_policy(const std::string& name);
std::string to_string(ReferencePolicy policy);

// Dataset restricted to k references per context. original_first keeps the
// original plus the first k-1 collected references; random draws a uniform
// k-subset of the full reference set (stored order preserved), seeded
// deterministically by (seed, resample_index).
std::vector<MultiRefRecord> select_references(const std::vector<MultiRefRecord>& dataset,
                                              int k, ReferencePolicy policy,
                                              std::uint64_t seed, int resample_index = 0);

struct AblationPoint {
  int k = 0;
  std::vector<MetricCorrelation> per_metric;
};

struct AblationCurve {
  std::vector<AblationPoint> points;  // k strictly increasing
  ReferencePolicy policy = ReferencePolicy::original_first;
  int resamples = 1;
  std::uint64_t seed = 0;
};

// Utterance-level correlation at each reference count k. The random policy
// averages coefficients and p-values over `resamples` draws; original_first
// is deterministic and ignores resampling.
AblationCurve reference_ablation(const std::vector<MultiRefRecord>& dataset,
                                 const std::vector<HypothesisRecord>& hyps,
                                 const std::vector<RatingRecord>& ratings,
                                 const std::vector<MetricSpec>& metrics,
                                 const std::vector<int>& k_values, ReferencePolicy policy,
                                 int resamples, std::uint64_t seed,
                                 const ExecPolicy& exec = {});

}  // namespace dialeval
