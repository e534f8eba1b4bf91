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

#include "dialeval/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dialeval/errors.hpp"
#include "dialeval/version.hpp"

namespace dialeval {

using nlohmann::json;

double round_sig(double v, int digits) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

std::string fmt_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
    if (!in) break;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json json_number(double v) { return round_sig(v); }

json json_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return round_sig(*v);
}

json run_manifest(const std::string& subcommand,
                  const std::map<std::string, std::string>& flags,
                  const std::map<std::string, std::string>& input_paths) {
  json inputs = json::object();
  for (const auto& [name, path] : input_paths) {
    inputs[name] = {{"path", path}, {"fnv1a64", hex64(fnv1a64_file(path))}};
  }
  return {{"tool", "dialeval"},
          {"version", kVersion},
          {"subcommand", subcommand},
          {"flags", flags},
          {"inputs", inputs}};
}

namespace {

json correlation_result_json(const CorrelationResult& r) {
  return {{"coefficient", json_number(r.coefficient)},
          {"p_value", json_number(r.p_value)},
          {"n", r.n}};
}

json metric_correlation_json(const MetricCorrelation& mc) {
  return {{"metric", mc.metric},
          {"spearman", correlation_result_json(mc.spearman)},
          {"pearson", correlation_result_json(mc.pearson)}};
}

std::string csv_field(const std::optional<double>& v) {
  return v ? fmt_sig(*v) : std::string();
}

}  // namespace

json quality_report_json(const QualityReport& report) {
  json rows = json::array();
  for (const QualityRow& row : report.rows) {
    rows.push_back({{"context_id", row.context_id},
                    {"model_id", row.model_id},
                    {"hyp_index", row.hyp_index},
                    {"metric", row.metric},
                    {"single", json_number(row.single_score)},
                    {"multi", json_number(row.multi_score)}});
  }
  json aggregates = json::array();
  for (const ModelMetricMean& agg : report.aggregates) {
    aggregates.push_back({{"model_id", agg.model_id},
                          {"metric", agg.metric},
                          {"mean", json_number(agg.mean)},
                          {"n", agg.n}});
  }
  return {{"mode", to_string(report.mode)},
          {"metrics", report.metrics},
          {"per_utterance", rows},
          {"aggregates", aggregates}};
}

std::string quality_report_csv(const QualityReport& report) {
  std::ostringstream out;
  out << "context_id,model_id,hyp_index,metric,single,multi\n";
  for (const QualityRow& row : report.rows) {
    out << row.context_id << ',' << row.model_id << ',' << row.hyp_index << ','
        << row.metric << ',' << csv_field(row.single_score) << ','
        << csv_field(row.multi_score) << "\n";
  }
  return out.str();
}

json diversity_report_json(const DiversityReport& report) {
  json rows = json::array();
  for (const RecallRow& row : report.rows) {
    rows.push_back({{"context_id", row.context_id},
                    {"model_id", row.model_id},
                    {"metric", row.metric},
                    {"recall", json_number(row.recall)},
                    {"n_references", row.n_references},
                    {"n_hypotheses", row.n_hypotheses}});
  }
  json models = json::array();
  for (const ModelDiversity& m : report.models) {
    json distinct = json::object();
    for (std::size_t n = 1; n <= 3; ++n)
      distinct[std::to_string(n)] = json_number(m.distinct[n - 1]);
    json self_bleu = json::object();
    for (std::size_t n = 1; n <= 4; ++n)
      self_bleu[std::to_string(n)] = json_number(m.mean_self_bleu[n - 1]);
    json recall = json::object();
    for (const auto& [metric, value] : m.mean_recall)
      recall[metric] = json_number(value);
    models.push_back({{"model_id", m.model_id},
                      {"distinct", distinct},
                      {"self_bleu", self_bleu},
                      {"self_bleu_contexts", m.self_bleu_contexts},
                      {"mean_recall", recall}});
  }
  return {{"denominator", to_string(report.denominator)},
          {"per_context", rows},
          {"models", models}};
}

std::string diversity_report_csv(const DiversityReport& report) {
  std::ostringstream out;
  out << "context_id,model_id,metric,recall,n_references,n_hypotheses\n";
  for (const RecallRow& row : report.rows) {
    out << row.context_id << ',' << row.model_id << ',' << row.metric << ','
        << csv_field(row.recall) << ',' << row.n_references << ',' << row.n_hypotheses
        << "\n";
  }
  return out.str();
}

json correlation_json(const std::vector<MetricCorrelation>& correlations) {
  json out = json::array();
  for (const MetricCorrelation& mc : correlations) out.push_back(metric_correlation_json(mc));
  return out;
}

std::string correlation_csv(const std::vector<MetricCorrelation>& correlations) {
  std::ostringstream out;
  out << "metric,spearman,spearman_p,pearson,pearson_p,n\n";
  for (const MetricCorrelation& mc : correlations) {
    out << mc.metric << ',' << fmt_sig(mc.spearman.coefficient) << ','
        << fmt_sig(mc.spearman.p_value) << ',' << fmt_sig(mc.pearson.coefficient) << ','
        << fmt_sig(mc.pearson.p_value) << ',' << mc.spearman.n << "\n";
  }
  return out.str();
}

json system_correlation_json(const SystemCorrelationResult& result) {
  json scatter = json::array();
  for (const SystemScatterRow& row : result.scatter) {
    json metrics = json::object();
    for (const auto& [metric, value] : row.mean_metric)
      metrics[metric] = json_number(value);
    scatter.push_back({{"model_id", row.model_id},
                       {"mean_rating", json_number(row.mean_rating)},
                       {"mean_metric", metrics}});
  }
  return {{"per_metric", correlation_json(result.per_metric)},
          {"scatter", scatter},
          {"models_without_ratings", result.models_without_ratings}};
}

std::string scatter_csv(const SystemCorrelationResult& result) {
  std::ostringstream out;
  out << "model_id,metric,mean_rating,mean_metric\n";
  for (const SystemScatterRow& row : result.scatter) {
    for (const auto& [metric, value] : row.mean_metric) {
      out << row.model_id << ',' << metric << ',' << fmt_sig(row.mean_rating) << ','
          << fmt_sig(value) << "\n";
    }
  }
  return out.str();
}

json ablation_json(const AblationCurve& curve) {
  json points = json::array();
  for (const AblationPoint& point : curve.points) {
    points.push_back({{"k", point.k},
                      {"per_metric", correlation_json(point.per_metric)}});
  }
  return {{"policy", to_string(curve.policy)},
          {"resamples", curve.resamples},
          {"seed", curve.seed},
          {"points", points}};
}

std::string ablation_csv(const AblationCurve& curve) {
  std::ostringstream out;
  out << "k,metric,spearman,spearman_p,pearson,pearson_p,n\n";
  for (const AblationPoint& point : curve.points) {
    for (const MetricCorrelation& mc : point.per_metric) {
      out << point.k << ',' << mc.metric << ',' << fmt_sig(mc.spearman.coefficient)
          << ',' << fmt_sig(mc.spearman.p_value) << ','
          << fmt_sig(mc.pearson.coefficient) << ',' << fmt_sig(mc.pearson.p_value)
          << ',' << mc.spearman.n << "\n";
    }
  }
  return out.str();
}

json kappa_json(const KappaResult& result) {
  json kappas = json::object();
  for (const auto& [rater, kappa] : result.mean_kappa)
    kappas[rater] = json_number(kappa);
  json retained = json::array();
  json removed = json::array();
  for (const auto& [rater, kappa] : result.mean_kappa) {
    if (result.retained.count(rater)) {
      retained.push_back(rater);
    } else {
      removed.push_back(rater);
    }
  }
  return {{"mean_kappa", kappas}, {"retained", retained}, {"removed", removed}};
}

std::string kappa_csv(const KappaResult& result) {
  std::ostringstream out;
  out << "rater_id,mean_kappa,retained\n";
  for (const auto& [rater, kappa] : result.mean_kappa) {
    out << rater << ',' << fmt_sig(kappa) << ','
        << (result.retained.count(rater) ? "1" : "0") << "\n";
  }
  return out.str();
}

json ngram_stats_json(const NgramStats& stats) {
  json original = json::object();
  json multi = json::object();
  for (std::size_t n = 1; n <= 3; ++n) {
    original[std::to_string(n)] = json_number(stats.original_mean[n - 1]);
    multi[std::to_string(n)] = json_number(stats.multi_mean[n - 1]);
  }
  return {{"original", original}, {"multi", multi}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed while writing " + path);
}

}  // namespace dialeval
