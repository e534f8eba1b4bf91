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

#include "dialeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include "dialeval/errors.hpp"

namespace dialeval {

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size(), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

struct Centered {
  std::vector<double> dev;
  double ss = 0;  // sum of squared deviations
};

Centered center(std::span<const double> v) {
  Centered c;
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  c.dev.reserve(v.size());
  for (double x : v) {
    double d = x - mean;
    c.dev.push_back(d);
    c.ss += d * d;
  }
  return c;
}

// r = Sxy / sqrt(Sxx * Syy); single square root so exact integer inputs
// stay exact.
double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("correlation: length mismatch");
  if (x.size() < 3) throw ValidationError("correlation: need at least 3 samples");
  Centered cx = center(x);
  Centered cy = center(y);
  if (cx.ss == 0.0 || cy.ss == 0.0)
    throw ValidationError("correlation: constant sequence");
  double sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += cx.dev[i] * cy.dev[i];
  double r = sxy / std::sqrt(cx.ss * cy.ss);
  return std::clamp(r, -1.0, 1.0);
}

double p_from_t_approx(double r, std::size_t n) {
  if (std::fabs(r) >= 1.0) return 0.0;
  double dof = static_cast<double>(n - 2);
  double t = r * std::sqrt(dof / (1.0 - r * r));
  return student_t_two_sided_p(t, dof);
}

}  // namespace

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  double r = pearson_r(x, y);
  return {r, p_from_t_approx(r, x.size()), x.size()};
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y,
                           PValueMethod method) {
  std::vector<double> rx = fractional_ranks(x);
  std::vector<double> ry = fractional_ranks(y);
  double rho = pearson_r(rx, ry);
  if (method == PValueMethod::t_approx)
    return {rho, p_from_t_approx(rho, x.size()), x.size()};

  if (x.size() > 10)
    throw ValidationError("exact permutation p-value is limited to n <= 10");
  Centered cx = center(rx);
  std::vector<double> perm = ry;
  std::sort(perm.begin(), perm.end());
  double ry_mean = std::accumulate(perm.begin(), perm.end(), 0.0) /
                   static_cast<double>(perm.size());
  double syy = 0;
  for (double v : perm) syy += (v - ry_mean) * (v - ry_mean);
  double denom = std::sqrt(cx.ss * syy);
  double threshold = std::fabs(rho) - 1e-12;
  std::uint64_t total = 0, at_least = 0;
  do {
    double sxy = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) sxy += cx.dev[i] * (perm[i] - ry_mean);
    if (std::fabs(sxy / denom) >= threshold) ++at_least;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {rho, static_cast<double>(at_least) / static_cast<double>(total), x.size()};
}

namespace {

// Returns false when the expected-disagreement denominator is zero.
bool kappa_core(std::span<const int> a, std::span<const int> b, int k,
                KappaWeights weights, double& out) {
  std::size_t n = a.size();
  std::vector<double> observed(static_cast<std::size_t>(k) * k, 0.0);
  std::vector<double> pa(k, 0.0), pb(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    observed[(a[i] - 1) * static_cast<std::size_t>(k) + (b[i] - 1)] += 1.0;
    pa[a[i] - 1] += 1.0;
    pb[b[i] - 1] += 1.0;
  }
  double nn = static_cast<double>(n);
  double num = 0, den = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double d = k > 1 ? std::fabs(i - j) / static_cast<double>(k - 1) : 0.0;
      double w = weights == KappaWeights::linear ? d : d * d;
      num += w * observed[i * static_cast<std::size_t>(k) + j] / nn;
      den += w * (pa[i] / nn) * (pb[j] / nn);
    }
  }
  if (den == 0.0) return false;
  out = 1.0 - num / den;
  return true;
}

}  // namespace

KappaWeights parse_kappa_weights(const std::string& name) {
  if (name == "linear") return KappaWeights::linear;
  if (name == "quadratic") return KappaWeights::quadratic;
  throw ValidationError("unknown kappa weights '" + name + "'");
}

std::string to_string(KappaWeights weights) {
  return weights == KappaWeights::linear ? "linear" : "quadratic";
}

double weighted_kappa(std::span<const int> a, std::span<const int> b, int categories,
                      KappaWeights weights) {
  if (a.size() != b.size()) throw ValidationError("weighted_kappa: length mismatch");
  if (a.empty()) throw ValidationError("weighted_kappa: empty sequences");
  if (categories < 1) throw ValidationError("weighted_kappa: categories must be >= 1");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > categories || b[i] < 1 || b[i] > categories)
      throw ValidationError("weighted_kappa: category outside [1," +
                            std::to_string(categories) + "]");
  }
  double kappa = 0;
  if (!kappa_core(a, b, categories, weights, kappa))
    throw ValidationError("weighted_kappa: expected disagreement is zero");
  return kappa;
}

KappaResult filter_raters(const std::vector<RatingRecord>& ratings, double threshold,
                          KappaWeights weights) {
  if (ratings.empty()) throw ValidationError("filter_raters: no ratings");
  RatingKind kind = ratings.front().kind;
  int max_value = 0;
  for (const RatingRecord& r : ratings) {
    if (r.kind != kind)
      throw ValidationError("filter_raters: mixed rating kinds; filter one kind at a time");
    max_value = std::max(max_value, r.value);
  }
  // Appropriateness is a fixed 1..5 scale; diversity values are 0-based
  // counts, shifted to 1-based categories.
  int categories = kind == RatingKind::appropriateness ? 5 : max_value + 1;
  int shift = kind == RatingKind::appropriateness ? 0 : 1;

  std::map<std::string, std::map<std::pair<std::string, std::string>, int>> by_rater;
  for (const RatingRecord& r : ratings) {
    auto key = std::make_pair(r.context_id, r.model_id);
    auto [it, inserted] = by_rater[r.rater_id].emplace(key, r.value + shift);
    if (!inserted)
      throw ValidationError("filter_raters: rater '" + r.rater_id +
                            "' rated context '" + r.context_id + "', model '" +
                            r.model_id + "' more than once");
  }
  if (by_rater.size() < 2)
    throw ValidationError("filter_raters: need at least 2 raters");

  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (auto it1 = by_rater.begin(); it1 != by_rater.end(); ++it1) {
    for (auto it2 = std::next(it1); it2 != by_rater.end(); ++it2) {
      std::vector<int> a, b;
      for (const auto& [item, value] : it1->second) {
        auto found = it2->second.find(item);
        if (found != it2->second.end()) {
          a.push_back(value);
          b.push_back(found->second);
        }
      }
      if (a.size() < 2) continue;
      double kappa = 0;
      if (!kappa_core(std::span<const int>(a), std::span<const int>(b), categories,
                      weights, kappa))
        continue;  // both raters constant and equal: undefined, skip the pair
      acc[it1->first].first += kappa;
      acc[it1->first].second += 1;
      acc[it2->first].first += kappa;
      acc[it2->first].second += 1;
    }
  }

  KappaResult result;
  for (const auto& [rater, items] : by_rater) {
    auto it = acc.find(rater);
    if (it == acc.end() || it->second.second == 0)
      throw ValidationError("filter_raters: rater '" + rater +
                            "' shares no usable rated items with any other rater");
    double mean = it->second.first / static_cast<double>(it->second.second);
    result.mean_kappa[rater] = mean;
    if (mean >= threshold) result.retained.insert(rater);
  }
  return result;
}

namespace {

using ItemKey = std::pair<std::string, std::string>;

std::map<ItemKey, double> mean_appropriateness(const std::vector<RatingRecord>& ratings) {
  std::map<ItemKey, std::pair<double, std::size_t>> acc;
  for (const RatingRecord& r : ratings) {
    if (r.kind != RatingKind::appropriateness) continue;
    auto& [sum, n] = acc[{r.context_id, r.model_id}];
    sum += static_cast<double>(r.value);
    ++n;
  }
  std::map<ItemKey, double> means;
  for (const auto& [key, sn] : acc)
    means[key] = sn.first / static_cast<double>(sn.second);
  return means;
}

const std::optional<double>& mode_score(const QualityRow& row, ScoreMode mode) {
  return mode == ScoreMode::single ? row.single_score : row.multi_score;
}

}  // namespace

std::vector<MetricCorrelation> utterance_correlation(
    const QualityReport& report, const std::vector<RatingRecord>& ratings,
    PValueMethod method) {
  std::map<ItemKey, double> human = mean_appropriateness(ratings);
  std::vector<MetricCorrelation> out;
  for (const std::string& metric : report.metrics) {
    std::vector<double> x, y;
    for (const QualityRow& row : report.rows) {
      if (row.metric != metric) continue;
      const std::optional<double>& score = mode_score(row, report.mode);
      auto it = human.find({row.context_id, row.model_id});
      if (!score || it == human.end()) continue;
      x.push_back(*score);
      y.push_back(it->second);
    }
    if (x.size() < 3)
      throw ValidationError("utterance_correlation: metric '" + metric + "' has " +
                            std::to_string(x.size()) + " joined rows; need >= 3");
    MetricCorrelation mc;
    mc.metric = metric;
    mc.spearman = spearman(x, y, method);
    mc.pearson = pearson(x, y);
    out.push_back(std::move(mc));
  }
  return out;
}

SystemCorrelationResult system_correlation(const QualityReport& report,
                                           const std::vector<RatingRecord>& ratings,
                                           PValueMethod method) {
  std::map<ItemKey, double> human = mean_appropriateness(ratings);
  // Per-model mean of the per-(context, model) human means.
  std::map<std::string, std::pair<double, std::size_t>> rating_acc;
  for (const auto& [key, value] : human) {
    auto& [sum, n] = rating_acc[key.second];
    sum += value;
    ++n;
  }

  std::set<std::string> scored_models;
  for (const QualityRow& row : report.rows) scored_models.insert(row.model_id);
  for (const auto& [model, sn] : rating_acc) {
    if (!scored_models.count(model))
      throw ValidationError("system_correlation: model '" + model +
                            "' has ratings but no scores");
  }

  SystemCorrelationResult result;
  std::map<std::string, std::map<std::string, double>> model_metric_mean;
  for (const ModelMetricMean& agg : report.aggregates) {
    if (agg.mean) model_metric_mean[agg.model_id][agg.metric] = *agg.mean;
  }

  std::vector<std::string> fit_models;
  for (const std::string& model : scored_models) {
    if (rating_acc.count(model)) {
      fit_models.push_back(model);
    } else {
      result.models_without_ratings.push_back(model);
    }
  }

  for (const std::string& metric : report.metrics) {
    std::vector<double> x, y;
    for (const std::string& model : fit_models) {
      auto mit = model_metric_mean.find(model);
      if (mit == model_metric_mean.end() || !mit->second.count(metric)) continue;
      x.push_back(mit->second.at(metric));
      const auto& [sum, n] = rating_acc.at(model);
      y.push_back(sum / static_cast<double>(n));
    }
    if (x.size() < 3)
      throw ValidationError("system_correlation: metric '" + metric + "' covers " +
                            std::to_string(x.size()) + " models; need >= 3");
    MetricCorrelation mc;
    mc.metric = metric;
    mc.spearman = spearman(x, y, method);
    mc.pearson = pearson(x, y);
    result.per_metric.push_back(std::move(mc));
  }

  for (const std::string& model : fit_models) {
    SystemScatterRow row;
    row.model_id = model;
    const auto& [sum, n] = rating_acc.at(model);
    row.mean_rating = sum / static_cast<double>(n);
    auto mit = model_metric_mean.find(model);
    if (mit != model_metric_mean.end()) row.mean_metric = mit->second;
    result.scatter.push_back(std::move(row));
  }
  return result;
}

ReferencePolicy parse_reference_policy(const std::string& name) {
  if (name == "original_first") return ReferencePolicy::original_first;
  if (name == "random") return ReferencePolicy::random;
  throw ValidationError("unknown reference policy '" + name + "'");
}

std::string to_string(ReferencePolicy policy) {
  return policy == ReferencePolicy::original_first ? "original_first" : "random";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Unbiased bounded draw, independent of the standard library's
// distribution implementation so runs reproduce across platforms.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

}  // namespace

std::vector<MultiRefRecord> select_references(const std::vector<MultiRefRecord>& dataset,
                                              int k, ReferencePolicy policy,
                                              std::uint64_t seed, int resample_index) {
  if (k < 1) throw ValidationError("select_references: k must be >= 1");
  std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(resample_index)));
  std::vector<MultiRefRecord> out;
  out.reserve(dataset.size());
  for (const MultiRefRecord& rec : dataset) {
    std::vector<Utterance> refs = rec.all_refs();
    if (refs.size() < static_cast<std::size_t>(k))
      throw ValidationError("select_references: context '" + rec.context.context_id +
                            "' has only " + std::to_string(refs.size()) +
                            " references; k = " + std::to_string(k));
    MultiRefRecord copy = rec;
    if (policy == ReferencePolicy::original_first) {
      copy.collected_refs.resize(static_cast<std::size_t>(k - 1) <
                                         copy.collected_refs.size()
                                     ? static_cast<std::size_t>(k - 1)
                                     : copy.collected_refs.size());
    } else {
      std::vector<std::size_t> idx(refs.size());
      std::iota(idx.begin(), idx.end(), 0);
      for (int i = 0; i < k; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        bounded(rng, static_cast<std::uint64_t>(idx.size() - i));
        std::swap(idx[i], idx[j]);
      }
      idx.resize(static_cast<std::size_t>(k));
      std::sort(idx.begin(), idx.end());
      copy.original_ref = refs[idx[0]];
      copy.collected_refs.clear();
      for (std::size_t i = 1; i < idx.size(); ++i)
        copy.collected_refs.push_back(refs[idx[i]]);
    }
    out.push_back(std::move(copy));
  }
  return out;
}

AblationCurve reference_ablation(const std::vector<MultiRefRecord>& dataset,
                                 const std::vector<HypothesisRecord>& hyps,
                                 const std::vector<RatingRecord>& ratings,
                                 const std::vector<MetricSpec>& metrics,
                                 const std::vector<int>& k_values, ReferencePolicy policy,
                                 int resamples, std::uint64_t seed,
                                 const ExecPolicy& exec) {
  if (k_values.empty()) throw ValidationError("reference_ablation: empty k_values");
  if (resamples < 1) throw ValidationError("reference_ablation: resamples must be >= 1");
  std::vector<int> ks = k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() < 1) throw ValidationError("reference_ablation: k must be >= 1");

  std::size_t min_refs = 0;
  for (const MultiRefRecord& rec : dataset) {
    std::size_t size = 1 + rec.collected_refs.size();
    min_refs = min_refs == 0 ? size : std::min(min_refs, size);
  }
  if (static_cast<std::size_t>(ks.back()) > min_refs)
    throw ValidationError("reference_ablation: k = " + std::to_string(ks.back()) +
                          " exceeds the smallest reference set (" +
                          std::to_string(min_refs) + ")");

  int draws = policy == ReferencePolicy::random ? resamples : 1;
  AblationCurve curve;
  curve.policy = policy;
  curve.resamples = draws;
  curve.seed = seed;

  for (int k : ks) {
    std::vector<std::vector<MetricCorrelation>> per_draw;
    for (int d = 0; d < draws; ++d) {
      std::vector<MultiRefRecord> subset = select_references(dataset, k, policy, seed, d);
      QualityReport report =
          corpus_quality(subset, hyps, metrics, ScoreMode::multi, exec);
      per_draw.push_back(utterance_correlation(report, ratings));
    }
    AblationPoint point;
    point.k = k;
    for (std::size_t m = 0; m < per_draw.front().size(); ++m) {
      MetricCorrelation mean = per_draw.front()[m];
      for (std::size_t d = 1; d < per_draw.size(); ++d) {
        mean.spearman.coefficient += per_draw[d][m].spearman.coefficient;
        mean.spearman.p_value += per_draw[d][m].spearman.p_value;
        mean.pearson.coefficient += per_draw[d][m].pearson.coefficient;
        mean.pearson.p_value += per_draw[d][m].pearson.p_value;
      }
      double dn = static_cast<double>(per_draw.size());
      mean.spearman.coefficient /= dn;
      mean.spearman.p_value /= dn;
      mean.pearson.coefficient /= dn;
      mean.pearson.p_value /= dn;
      point.per_metric.push_back(std::move(mean));
    }
    curve.points.push_back(std::move(point));
  }
  return curve;
}

}  // namespace dialeval
