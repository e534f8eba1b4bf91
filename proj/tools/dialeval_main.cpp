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

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dialeval/corpus.hpp"
#include "dialeval/errors.hpp"
#include "dialeval/evaluate.hpp"
#include "dialeval/report.hpp"
#include "dialeval/stats.hpp"
#include "dialeval/version.hpp"

namespace {

using dialeval::ValidationError;
using nlohmann::json;

struct RunConfig {
  std::string dataset_path;
  std::string hyps_path;
  std::string ratings_path;
  std::string embeddings_path;
  std::string sentence_embeddings_path;
  std::vector<std::string> metric_names;
  std::string mode = "multi";
  std::string tokenizer = "pretokenized";
  std::string out_path;
  std::string csv_path;
  std::string scatter_csv_path;

  double bleu_epsilon = 0.1;
  int bleu_max_n = 4;
  double meteor_alpha = 0.9;
  double meteor_beta = 3.0;
  double meteor_gamma = 0.5;
  std::string meteor_stages = "exact,stem";
  double rouge_beta = 1.2;

  std::string distinct_denominator = "ngrams";
  double kappa_threshold = 0.2;
  std::string kappa_weights = "quadratic";
  std::string rating_kind = "appropriateness";
  std::string level = "utterance";
  bool spearman_exact = false;
  bool compare_modes = false;
  bool no_rater_filter = false;

  std::string k_values;  // comma list; empty = 1..max shared reference count
  std::string policy = "original_first";
  int resamples = 10;
  std::uint64_t seed = 7;
  int threads = 0;
};

// Everything the run depends on, recorded in the report manifest.
std::map<std::string, std::string> effective_flags(const RunConfig& cfg,
                                                   const std::string& subcommand) {
  std::map<std::string, std::string> flags;
  auto put = [&](const std::string& key, const std::string& value) {
    if (!value.empty()) flags[key] = value;
  };
  std::string metrics;
  for (const std::string& m : cfg.metric_names) {
    if (!metrics.empty()) metrics += ",";
    metrics += m;
  }
  put("metrics", metrics);
  put("tokenizer", cfg.tokenizer);
  flags["threads"] = std::to_string(cfg.threads);
  if (subcommand == "score" || subcommand == "correlate" || subcommand == "ablate")
    put("mode", cfg.mode);
  if (subcommand == "score" || subcommand == "diversity" || subcommand == "correlate" ||
      subcommand == "ablate" || subcommand == "stats") {
    flags["bleu_epsilon"] = dialeval::fmt_sig(cfg.bleu_epsilon);
    flags["bleu_max_n"] = std::to_string(cfg.bleu_max_n);
  }
  if (!cfg.metric_names.empty()) {
    flags["meteor_alpha"] = dialeval::fmt_sig(cfg.meteor_alpha);
    flags["meteor_beta"] = dialeval::fmt_sig(cfg.meteor_beta);
    flags["meteor_gamma"] = dialeval::fmt_sig(cfg.meteor_gamma);
    flags["meteor_stages"] = cfg.meteor_stages;
    flags["rouge_beta"] = dialeval::fmt_sig(cfg.rouge_beta);
  }
  if (subcommand == "diversity") flags["distinct_denominator"] = cfg.distinct_denominator;
  if (subcommand == "correlate" || subcommand == "kappa" || subcommand == "ablate") {
    flags["kappa_threshold"] = dialeval::fmt_sig(cfg.kappa_threshold);
    flags["kappa_weights"] = cfg.kappa_weights;
  }
  if (subcommand == "kappa") flags["kind"] = cfg.rating_kind;
  if (subcommand == "correlate") {
    flags["level"] = cfg.level;
    flags["spearman_exact"] = cfg.spearman_exact ? "true" : "false";
    flags["compare_modes"] = cfg.compare_modes ? "true" : "false";
    flags["no_rater_filter"] = cfg.no_rater_filter ? "true" : "false";
  }
  if (subcommand == "ablate") {
    put("k_values", cfg.k_values);
    flags["policy"] = cfg.policy;
    flags["resamples"] = std::to_string(cfg.resamples);
    flags["seed"] = std::to_string(cfg.seed);
    flags["no_rater_filter"] = cfg.no_rater_filter ? "true" : "false";
  }
  return flags;
}

struct LoadedResources {
  std::optional<dialeval::EmbeddingTable> embeddings;
  std::optional<dialeval::SentenceEmbeddingProvider> sentences;
};

dialeval::MetricParams metric_params(const RunConfig& cfg) {
  dialeval::MetricParams params;
  params.bleu_epsilon = cfg.bleu_epsilon;
  params.meteor.alpha = cfg.meteor_alpha;
  params.meteor.beta = cfg.meteor_beta;
  params.meteor.gamma = cfg.meteor_gamma;
  params.meteor.stages.clear();
  for (const std::string& stage : {std::string("exact"), std::string("stem")}) {
    if (cfg.meteor_stages.find(stage) != std::string::npos)
      params.meteor.stages.push_back(stage == "exact" ? dialeval::MeteorStage::exact
                                                      : dialeval::MeteorStage::stem);
  }
  if (params.meteor.stages.empty())
    throw ValidationError("invalid --meteor-stages '" + cfg.meteor_stages + "'");
  params.rouge.beta = cfg.rouge_beta;
  return params;
}

std::vector<dialeval::MetricSpec> build_metrics(const RunConfig& cfg,
                                                LoadedResources& resources) {
  if (cfg.metric_names.empty()) throw ValidationError("no metrics given");
  if (cfg.bleu_epsilon <= 0) throw ValidationError("--bleu-epsilon must be > 0");
  if (cfg.bleu_max_n < 1 || cfg.bleu_max_n > 4)
    throw ValidationError("--bleu-max-n must be in [1,4]");
  if (cfg.meteor_alpha <= 0 || cfg.meteor_alpha >= 1)
    throw ValidationError("--meteor-alpha must be in (0,1)");
  if (cfg.meteor_beta <= 0) throw ValidationError("--meteor-beta must be > 0");
  if (cfg.meteor_gamma < 0 || cfg.meteor_gamma > 1)
    throw ValidationError("--meteor-gamma must be in [0,1]");
  if (cfg.rouge_beta <= 0) throw ValidationError("--rouge-beta must be > 0");

  dialeval::MetricParams params = metric_params(cfg);
  std::vector<dialeval::MetricSpec> metrics;
  for (const std::string& name : cfg.metric_names) {
    dialeval::MetricSpec spec;
    spec.family = dialeval::parse_metric_family(name);
    spec.params = params;
    if (dialeval::needs_word_embeddings(spec.family)) {
      if (cfg.embeddings_path.empty())
        throw ValidationError("metric '" + name + "' requires --embeddings");
      if (!resources.embeddings)
        resources.embeddings = dialeval::EmbeddingTable::load(cfg.embeddings_path);
      spec.embeddings = &*resources.embeddings;
    }
    if (dialeval::needs_sentence_embeddings(spec.family)) {
      if (cfg.sentence_embeddings_path.empty())
        throw ValidationError("metric '" + name + "' requires --sentence-embeddings");
      if (!resources.sentences)
        resources.sentences =
            dialeval::SentenceEmbeddingProvider::load(cfg.sentence_embeddings_path);
      spec.sentence_embeddings = &*resources.sentences;
    }
    metrics.push_back(std::move(spec));
  }
  return metrics;
}

std::vector<int> parse_k_values(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string field = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      out.push_back(std::stoi(field));
    } catch (const std::exception&) {
      throw ValidationError("invalid k value '" + field + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::map<std::string, std::string> input_paths(const RunConfig& cfg) {
  std::map<std::string, std::string> inputs;
  if (!cfg.dataset_path.empty()) inputs["dataset"] = cfg.dataset_path;
  if (!cfg.hyps_path.empty()) inputs["hypotheses"] = cfg.hyps_path;
  if (!cfg.ratings_path.empty()) inputs["ratings"] = cfg.ratings_path;
  if (!cfg.embeddings_path.empty()) inputs["embeddings"] = cfg.embeddings_path;
  if (!cfg.sentence_embeddings_path.empty())
    inputs["sentence_embeddings"] = cfg.sentence_embeddings_path;
  return inputs;
}

void emit_report(const RunConfig& cfg, json doc) {
  std::string text = doc.dump(2);
  text.push_back('\n');
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    dialeval::write_text_file(cfg.out_path, text);
  }
}

std::vector<dialeval::RatingRecord> filtered_appropriateness(
    const RunConfig& cfg, const std::vector<dialeval::RatingRecord>& ratings,
    json* filter_info) {
  std::vector<dialeval::RatingRecord> appropriateness;
  for (const dialeval::RatingRecord& r : ratings) {
    if (r.kind == dialeval::RatingKind::appropriateness) appropriateness.push_back(r);
  }
  if (appropriateness.empty())
    throw ValidationError("no appropriateness ratings in " + cfg.ratings_path);
  if (cfg.no_rater_filter) return appropriateness;
  dialeval::KappaResult kappa =
      dialeval::filter_raters(appropriateness, cfg.kappa_threshold,
                              dialeval::parse_kappa_weights(cfg.kappa_weights));
  if (filter_info) {
    *filter_info = dialeval::kappa_json(kappa);
    (*filter_info)["threshold"] = dialeval::round_sig(cfg.kappa_threshold);
    (*filter_info)["weights"] = cfg.kappa_weights;
  }
  std::vector<dialeval::RatingRecord> retained;
  for (dialeval::RatingRecord& r : appropriateness) {
    if (kappa.retained.count(r.rater_id)) retained.push_back(std::move(r));
  }
  if (retained.empty()) throw ValidationError("rater filtering removed every rating");
  return retained;
}

int cmd_validate(const RunConfig& cfg) {
  dialeval::TokenizerMode mode = dialeval::parse_tokenizer_mode(cfg.tokenizer);
  auto dataset = dialeval::load_dataset(cfg.dataset_path, mode);
  std::cout << "dataset: " << dataset.size() << " records\n";
  std::vector<dialeval::HypothesisRecord> hyps;
  if (!cfg.hyps_path.empty()) {
    hyps = dialeval::load_hypotheses(cfg.hyps_path, dataset, mode);
    std::cout << "hypotheses: " << hyps.size() << " records\n";
  }
  if (!cfg.ratings_path.empty()) {
    auto ratings = dialeval::load_ratings(cfg.ratings_path);
    if (!cfg.hyps_path.empty()) dialeval::cross_validate(ratings, hyps);
    std::cout << "ratings: " << ratings.size() << " records\n";
  }
  std::cout << "ok\n";
  return 0;
}

int cmd_score(const RunConfig& cfg) {
  dialeval::TokenizerMode mode = dialeval::parse_tokenizer_mode(cfg.tokenizer);
  auto dataset = dialeval::load_dataset(cfg.dataset_path, mode);
  auto hyps = dialeval::load_hypotheses(cfg.hyps_path, dataset, mode);
  LoadedResources resources;
  auto metrics = build_metrics(cfg, resources);
  dialeval::QualityReport report = dialeval::corpus_quality(
      dataset, hyps, metrics, dialeval::parse_score_mode(cfg.mode), {cfg.threads});

  json doc = dialeval::quality_report_json(report);
  doc["run_manifest"] = dialeval::run_manifest("score", effective_flags(cfg, "score"),
                                               input_paths(cfg));
  emit_report(cfg, std::move(doc));
  if (!cfg.csv_path.empty())
    dialeval::write_text_file(cfg.csv_path, dialeval::quality_report_csv(report));
  return 0;
}

int cmd_diversity(const RunConfig& cfg) {
  dialeval::TokenizerMode mode = dialeval::parse_tokenizer_mode(cfg.tokenizer);
  auto dataset = dialeval::load_dataset(cfg.dataset_path, mode);
  auto hyps = dialeval::load_hypotheses(cfg.hyps_path, dataset, mode);
  LoadedResources resources;
  auto metrics = build_metrics(cfg, resources);
  dialeval::DiversityReport report = dialeval::corpus_diversity(
      dataset, hyps, metrics, dialeval::parse_distinct_denominator(cfg.distinct_denominator),
      cfg.bleu_epsilon, {cfg.threads});

  json doc = dialeval::diversity_report_json(report);
  doc["run_manifest"] = dialeval::run_manifest(
      "diversity", effective_flags(cfg, "diversity"), input_paths(cfg));
  emit_report(cfg, std::move(doc));
  if (!cfg.csv_path.empty())
    dialeval::write_text_file(cfg.csv_path, dialeval::diversity_report_csv(report));
  return 0;
}

int cmd_correlate(const RunConfig& cfg) {
  dialeval::TokenizerMode mode = dialeval::parse_tokenizer_mode(cfg.tokenizer);
  auto dataset = dialeval::load_dataset(cfg.dataset_path, mode);
  auto hyps = dialeval::load_hypotheses(cfg.hyps_path, dataset, mode);
  auto all_ratings = dialeval::load_ratings(cfg.ratings_path);
  LoadedResources resources;
  auto metrics = build_metrics(cfg, resources);

  json filter_info;
  auto ratings = filtered_appropriateness(cfg, all_ratings, &filter_info);
  dialeval::PValueMethod method = cfg.spearman_exact
                                      ? dialeval::PValueMethod::exact_permutation
                                      : dialeval::PValueMethod::t_approx;

  json doc;
  if (cfg.level == "utterance") {
    if (cfg.compare_modes) {
      auto single = dialeval::corpus_quality(dataset, hyps, metrics,
                                             dialeval::ScoreMode::single, {cfg.threads});
      auto multi = dialeval::corpus_quality(dataset, hyps, metrics,
                                            dialeval::ScoreMode::multi, {cfg.threads});
      auto single_corr = dialeval::utterance_correlation(single, ratings, method);
      auto multi_corr = dialeval::utterance_correlation(multi, ratings, method);
      json comparison = json::array();
      for (std::size_t i = 0; i < single_corr.size(); ++i) {
        comparison.push_back(
            {{"metric", single_corr[i].metric},
             {"spearman_improved", multi_corr[i].spearman.coefficient >=
                                       single_corr[i].spearman.coefficient},
             {"pearson_improved", multi_corr[i].pearson.coefficient >=
                                      single_corr[i].pearson.coefficient}});
      }
      doc["single"] = dialeval::correlation_json(single_corr);
      doc["multi"] = dialeval::correlation_json(multi_corr);
      doc["multi_ge_single"] = comparison;
    } else {
      auto report = dialeval::corpus_quality(dataset, hyps, metrics,
                                             dialeval::parse_score_mode(cfg.mode),
                                             {cfg.threads});
      auto corr = dialeval::utterance_correlation(report, ratings, method);
      doc["per_metric"] = dialeval::correlation_json(corr);
      if (!cfg.csv_path.empty())
        dialeval::write_text_file(cfg.csv_path, dialeval::correlation_csv(corr));
    }
  } else if (cfg.level == "system") {
    auto report = dialeval::corpus_quality(dataset, hyps, metrics,
                                           dialeval::parse_score_mode(cfg.mode),
                                           {cfg.threads});
    auto result = dialeval::system_correlation(report, ratings, method);
    doc = dialeval::system_correlation_json(result);
    if (!cfg.csv_path.empty())
      dialeval::write_text_file(cfg.csv_path, dialeval::correlation_csv(result.per_metric));
    if (!cfg.scatter_csv_path.empty())
      dialeval::write_text_file(cfg.scatter_csv_path, dialeval::scatter_csv(result));
  } else {
    throw ValidationError("unknown level '" + cfg.level + "'");
  }
  doc["level"] = cfg.level;
  if (!cfg.no_rater_filter) doc["rater_filter"] = filter_info;
  doc["run_manifest"] = dialeval::run_manifest(
      "correlate", effective_flags(cfg, "correlate"), input_paths(cfg));
  emit_report(cfg, std::move(doc));
  return 0;
}

int cmd_ablate(const RunConfig& cfg) {
  dialeval::TokenizerMode mode = dialeval::parse_tokenizer_mode(cfg.tokenizer);
  auto dataset = dialeval::load_dataset(cfg.dataset_path, mode);
  auto hyps = dialeval::load_hypotheses(cfg.hyps_path, dataset, mode);
  auto all_ratings = dialeval::load_ratings(cfg.ratings_path);
  LoadedResources resources;
  auto metrics = build_metrics(cfg, resources);
  auto ratings = filtered_appropriateness(cfg, all_ratings, nullptr);

  std::vector<int> ks;
  if (cfg.k_values.empty()) {
    std::size_t min_refs = 0;
    for (const dialeval::MultiRefRecord& rec : dataset) {
      std::size_t size = 1 + rec.collected_refs.size();
      min_refs = min_refs == 0 ? size : std::min(min_refs, size);
    }
    for (std::size_t k = 1; k <= min_refs; ++k) ks.push_back(static_cast<int>(k));
  } else {
    ks = parse_k_values(cfg.k_values);
  }

  dialeval::AblationCurve curve = dialeval::reference_ablation(
      dataset, hyps, ratings, metrics, ks,
      dialeval::parse_reference_policy(cfg.policy), cfg.resamples, cfg.seed,
      {cfg.threads});

  json doc = dialeval::ablation_json(curve);
  doc["run_manifest"] = dialeval::run_manifest("ablate", effective_flags(cfg, "ablate"),
                                               input_paths(cfg));
  emit_report(cfg, std::move(doc));
  if (!cfg.csv_path.empty())
    dialeval::write_text_file(cfg.csv_path, dialeval::ablation_csv(curve));
  return 0;
}

int cmd_kappa(const RunConfig& cfg) {
  auto all_ratings = dialeval::load_ratings(cfg.ratings_path);
  dialeval::RatingKind kind = cfg.rating_kind == "appropriateness"
                                  ? dialeval::RatingKind::appropriateness
                                  : dialeval::RatingKind::diversity;
  if (cfg.rating_kind != "appropriateness" && cfg.rating_kind != "diversity")
    throw ValidationError("unknown rating kind '" + cfg.rating_kind + "'");
  std::vector<dialeval::RatingRecord> ratings;
  for (const dialeval::RatingRecord& r : all_ratings)
    if (r.kind == kind) ratings.push_back(r);
  if (ratings.empty())
    throw ValidationError("no " + cfg.rating_kind + " ratings in " + cfg.ratings_path);

  dialeval::KappaResult result = dialeval::filter_raters(
      ratings, cfg.kappa_threshold, dialeval::parse_kappa_weights(cfg.kappa_weights));

  json doc = dialeval::kappa_json(result);
  doc["kind"] = cfg.rating_kind;
  doc["threshold"] = dialeval::round_sig(cfg.kappa_threshold);
  doc["weights"] = cfg.kappa_weights;
  doc["run_manifest"] = dialeval::run_manifest("kappa", effective_flags(cfg, "kappa"),
                                               input_paths(cfg));
  emit_report(cfg, std::move(doc));
  if (!cfg.csv_path.empty())
    dialeval::write_text_file(cfg.csv_path, dialeval::kappa_csv(result));
  return 0;
}

int cmd_stats(const RunConfig& cfg) {
  dialeval::TokenizerMode mode = dialeval::parse_tokenizer_mode(cfg.tokenizer);
  auto dataset = dialeval::load_dataset(cfg.dataset_path, mode);
  dialeval::NgramStats stats = dialeval::dataset_stats(dataset);
  std::vector<double> gt = dialeval::gt_bleu(dataset, cfg.bleu_max_n, cfg.bleu_epsilon);

  json gt_json = json::object();
  for (std::size_t n = 0; n < gt.size(); ++n)
    gt_json[std::to_string(n + 1)] = dialeval::json_number(gt[n]);
  json doc = {{"records", dataset.size()},
              {"ngram_stats", dialeval::ngram_stats_json(stats)},
              {"gt_bleu", gt_json}};
  doc["run_manifest"] = dialeval::run_manifest("stats", effective_flags(cfg, "stats"),
                                               input_paths(cfg));
  emit_report(cfg, std::move(doc));
  return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, bool with_metrics) {
  cmd->add_option("--tokenizer", cfg.tokenizer, "pretokenized | rule_based");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = auto, 1 = serial)");
  cmd->add_option("--out", cfg.out_path, "write the JSON report here (default stdout)");
  if (with_metrics) {
    cmd->add_option("--metrics", cfg.metric_names,
                    "comma-separated metric list (bleu1..bleu4, meteor, rouge_l, "
                    "emb_average, vector_extrema, greedy_matching, sent_embedding)")
        ->delimiter(',');
    cmd->add_option("--embeddings", cfg.embeddings_path,
                    "word2vec text format embedding table");
    cmd->add_option("--sentence-embeddings", cfg.sentence_embeddings_path,
                    "JSONL sentence embeddings {\"text\", \"vector\"}");
    cmd->add_option("--bleu-epsilon", cfg.bleu_epsilon, "BLEU zero-match smoothing");
    cmd->add_option("--meteor-alpha", cfg.meteor_alpha, "METEOR F-mean weight");
    cmd->add_option("--meteor-beta", cfg.meteor_beta, "METEOR penalty exponent");
    cmd->add_option("--meteor-gamma", cfg.meteor_gamma, "METEOR penalty weight");
    cmd->add_option("--meteor-stages", cfg.meteor_stages, "exact,stem | exact | stem");
    cmd->add_option("--rouge-beta", cfg.rouge_beta, "ROUGE-L F-measure weight");
  }
}

int run(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"multi-reference evaluation for open-domain dialogue responses"};
  app.set_version_flag("--version", std::string("dialeval ") + dialeval::kVersion);
  app.require_subcommand(1);

  CLI::App* validate = app.add_subcommand("validate", "check input files");
  validate->add_option("--dataset", cfg.dataset_path)->required();
  validate->add_option("--hyps", cfg.hyps_path);
  validate->add_option("--ratings", cfg.ratings_path);
  validate->add_option("--tokenizer", cfg.tokenizer);

  CLI::App* score = app.add_subcommand("score", "quality scores per hypothesis");
  score->add_option("--dataset", cfg.dataset_path)->required();
  score->add_option("--hyps", cfg.hyps_path)->required();
  score->add_option("--mode", cfg.mode, "single | multi");
  score->add_option("--csv", cfg.csv_path, "per-row CSV output");
  add_common_options(score, cfg, true);

  CLI::App* diversity =
      app.add_subcommand("diversity", "referenced recall, Distinct and Self-BLEU");
  diversity->add_option("--dataset", cfg.dataset_path)->required();
  diversity->add_option("--hyps", cfg.hyps_path)->required();
  diversity->add_option("--distinct-denominator", cfg.distinct_denominator,
                        "tokens | ngrams");
  diversity->add_option("--bleu-max-n", cfg.bleu_max_n);
  diversity->add_option("--csv", cfg.csv_path, "per-row CSV output");
  add_common_options(diversity, cfg, true);

  CLI::App* correlate =
      app.add_subcommand("correlate", "correlation of metric scores with ratings");
  correlate->add_option("--dataset", cfg.dataset_path)->required();
  correlate->add_option("--hyps", cfg.hyps_path)->required();
  correlate->add_option("--ratings", cfg.ratings_path)->required();
  correlate->add_option("--mode", cfg.mode, "single | multi");
  correlate->add_option("--level", cfg.level, "utterance | system");
  correlate->add_option("--kappa-threshold", cfg.kappa_threshold);
  correlate->add_option("--kappa-weights", cfg.kappa_weights, "linear | quadratic");
  correlate->add_flag("--no-rater-filter", cfg.no_rater_filter,
                      "skip kappa-based rater filtering");
  correlate->add_flag("--spearman-exact", cfg.spearman_exact,
                      "exact permutation p-values (n <= 10)");
  correlate->add_flag("--compare-modes", cfg.compare_modes,
                      "report single and multi correlations side by side");
  correlate->add_option("--csv", cfg.csv_path, "per-metric CSV output");
  correlate->add_option("--scatter-csv", cfg.scatter_csv_path,
                        "system-level scatter rows (level = system)");
  add_common_options(correlate, cfg, true);

  CLI::App* ablate =
      app.add_subcommand("ablate", "correlation as a function of reference count");
  ablate->add_option("--dataset", cfg.dataset_path)->required();
  ablate->add_option("--hyps", cfg.hyps_path)->required();
  ablate->add_option("--ratings", cfg.ratings_path)->required();
  ablate->add_option("--k-values", cfg.k_values, "comma list, default 1..max");
  ablate->add_option("--policy", cfg.policy, "original_first | random");
  ablate->add_option("--resamples", cfg.resamples, "draws per k (random policy)");
  ablate->add_option("--seed", cfg.seed, "RNG seed for the random policy");
  ablate->add_option("--kappa-threshold", cfg.kappa_threshold);
  ablate->add_option("--kappa-weights", cfg.kappa_weights);
  ablate->add_flag("--no-rater-filter", cfg.no_rater_filter);
  ablate->add_option("--csv", cfg.csv_path, "plot-ready CSV output");
  add_common_options(ablate, cfg, true);

  CLI::App* kappa = app.add_subcommand("kappa", "inter-rater agreement and filtering");
  kappa->add_option("--ratings", cfg.ratings_path)->required();
  kappa->add_option("--kind", cfg.rating_kind, "appropriateness | diversity");
  kappa->add_option("--kappa-threshold", cfg.kappa_threshold);
  kappa->add_option("--kappa-weights", cfg.kappa_weights);
  kappa->add_option("--csv", cfg.csv_path, "per-rater CSV output");
  kappa->add_option("--out", cfg.out_path);

  CLI::App* stats =
      app.add_subcommand("stats", "reference-set n-gram statistics and Gt-BLEU");
  stats->add_option("--dataset", cfg.dataset_path)->required();
  stats->add_option("--bleu-max-n", cfg.bleu_max_n);
  stats->add_option("--bleu-epsilon", cfg.bleu_epsilon);
  stats->add_option("--tokenizer", cfg.tokenizer);
  stats->add_option("--out", cfg.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(cfg);
    if (score->parsed()) return cmd_score(cfg);
    if (diversity->parsed()) return cmd_diversity(cfg);
    if (correlate->parsed()) return cmd_correlate(cfg);
    if (ablate->parsed()) return cmd_ablate(cfg);
    if (kappa->parsed()) return cmd_kappa(cfg);
    if (stats->parsed()) return cmd_stats(cfg);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
