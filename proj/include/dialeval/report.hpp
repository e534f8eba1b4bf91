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
#include <string>

#include "json.hpp"

#include "dialeval/corpus.hpp"
#include "dialeval/evaluate.hpp"
#include "dialeval/stats.hpp"

namespace dialeval {

// All report floats are rounded to 6 significant digits before emission;
// together with nlohmann's sorted object keys that makes reports
// byte-identical across runs and thread counts.
double round_sig(double v, int digits = 6);
std::string fmt_sig(double v, int digits = 6);

std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

nlohmann::json json_number(double v);
nlohmann::json json_number(const std::optional<double>& v);  // null when missing

// {"tool", "version", "subcommand", "flags", "inputs"} with per-input
// content hashes so published numbers can be traced to exact inputs.
nlohmann::json run_manifest(const std::string& subcommand,
                            const std::map<std::string, std::string>& flags,
                            const std::map<std::string, std::string>& input_paths);

nlohmann::json quality_report_json(const QualityReport& report);
std::string quality_report_csv(const QualityReport& report);

nlohmann::json diversity_report_json(const DiversityReport& report);
std::string diversity_report_csv(const DiversityReport& report);

nlohmann::json correlation_json(const std::vector<MetricCorrelation>& correlations);
std::string correlation_csv(const std::vector<MetricCorrelation>& correlations);

nlohmann::json system_correlation_json(const SystemCorrelationResult& result);
std::string scatter_csv(const SystemCorrelationResult& result);

nlohmann::json ablation_json(const AblationCurve& curve);
std::string ablation_csv(const AblationCurve& curve);

nlohmann::json kappa_json(const KappaResult& result);
std::string kappa_csv(const KappaResult& result);

nlohmann::json ngram_stats_json(const NgramStats& stats);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace dialeval
