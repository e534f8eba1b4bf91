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

#include "dialeval/corpus.hpp"

#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "dialeval/errors.hpp"

namespace dialeval {

using nlohmann::json;

namespace {

std::string loc(const std::string& path, std::size_t line_no) {
  return path + ":" + std::to_string(line_no);
}

json parse_object(const std::string& path, std::size_t line_no, const std::string& line) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded())
    throw ValidationError(loc(path, line_no) + ": malformed JSON");
  if (!obj.is_object())
    throw ValidationError(loc(path, line_no) + ": expected a JSON object");
  return obj;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw ValidationError(where + ": missing or non-string field \"" + key + "\"");
  return obj[key].get<std::string>();
}

std::vector<std::string> require_string_array(const json& obj, const char* key,
                                              const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_array())
    throw ValidationError(where + ": missing or non-array field \"" + key + "\"");
  std::vector<std::string> out;
  for (const auto& x : obj[key]) {
    if (!x.is_string())
      throw ValidationError(where + ": non-string element in \"" + key + "\"");
    out.push_back(x.get<std::string>());
  }
  return out;
}

template <typename LineFn>
void for_each_line(const std::string& path, LineFn fn) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(line_no, line);
  }
}

}  // namespace

std::vector<Utterance> MultiRefRecord::all_refs() const {
  std::vector<Utterance> refs;
  refs.reserve(1 + collected_refs.size());
  refs.push_back(original_ref);
  refs.insert(refs.end(), collected_refs.begin(), collected_refs.end());
  return refs;
}

std::string to_string(RatingKind kind) {
  return kind == RatingKind::appropriateness ? "appropriateness" : "diversity";
}

std::vector<MultiRefRecord> load_dataset(const std::string& path, TokenizerMode mode) {
  std::vector<MultiRefRecord> records;
  std::unordered_set<std::string> seen_ids;
  for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = loc(path, line_no);
    json obj = parse_object(path, line_no, line);

    MultiRefRecord rec;
    rec.context.context_id = require_string(obj, "context_id", where);
    if (rec.context.context_id.empty())
      throw ValidationError(where + ": empty context_id");
    if (!seen_ids.insert(rec.context.context_id).second)
      throw ValidationError(where + ": duplicate context_id '" +
                            rec.context.context_id + "'");

    for (std::string& turn : require_string_array(obj, "context", where))
      rec.context.turns.push_back(make_utterance(std::move(turn), mode));
    if (rec.context.turns.empty())
      throw ValidationError(where + ": context must have at least one turn");

    rec.original_ref = make_utterance(require_string(obj, "reference", where), mode);
    if (rec.original_ref.tokens.empty())
      throw ValidationError(where + ": reference has no tokens");

    for (std::string& ref : require_string_array(obj, "multi_references", where)) {
      Utterance u = make_utterance(std::move(ref), mode);
      if (u.tokens.empty())
        throw ValidationError(where + ": reference has no tokens");
      rec.collected_refs.push_back(std::move(u));
    }
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<HypothesisRecord> load_hypotheses(const std::string& path,
                                              const std::vector<MultiRefRecord>& dataset,
                                              TokenizerMode mode) {
  std::unordered_set<std::string> known_ids;
  for (const MultiRefRecord& rec : dataset) known_ids.insert(rec.context.context_id);

  std::vector<HypothesisRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = loc(path, line_no);
    json obj = parse_object(path, line_no, line);

    HypothesisRecord rec;
    rec.context_id = require_string(obj, "context_id", where);
    rec.model_id = require_string(obj, "model_id", where);
    if (!known_ids.count(rec.context_id))
      throw ValidationError(where + ": unknown context_id '" + rec.context_id + "'");
    if (!seen.insert({rec.context_id, rec.model_id}).second)
      throw ValidationError(where + ": duplicate hypotheses for context '" +
                            rec.context_id + "' and model '" + rec.model_id + "'");

    for (std::string& hyp : require_string_array(obj, "hypotheses", where))
      rec.hypotheses.push_back(make_utterance(std::move(hyp), mode));
    if (rec.hypotheses.empty())
      throw ValidationError(where + ": empty hypotheses list");
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<RatingRecord> load_ratings(const std::string& path) {
  std::vector<RatingRecord> records;
  for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const std::string where = loc(path, line_no);
    json obj = parse_object(path, line_no, line);

    RatingRecord rec;
    rec.context_id = require_string(obj, "context_id", where);
    rec.model_id = require_string(obj, "model_id", where);
    rec.rater_id = require_string(obj, "rater_id", where);

    std::string kind = require_string(obj, "kind", where);
    if (kind == "appropriateness") {
      rec.kind = RatingKind::appropriateness;
    } else if (kind == "diversity") {
      rec.kind = RatingKind::diversity;
    } else {
      throw ValidationError(where + ": unknown rating kind '" + kind + "'");
    }

    if (!obj.contains("value") || !obj["value"].is_number_integer())
      throw ValidationError(where + ": missing or non-integer field \"value\"");
    rec.value = obj["value"].get<int>();

    if (obj.contains("appropriate_flags")) {
      if (rec.kind != RatingKind::diversity)
        throw ValidationError(where +
                              ": appropriate_flags only valid for diversity ratings");
      if (!obj["appropriate_flags"].is_array())
        throw ValidationError(where + ": appropriate_flags must be an array");
      std::vector<bool> flags;
      for (const auto& x : obj["appropriate_flags"]) {
        if (!x.is_boolean())
          throw ValidationError(where + ": non-boolean appropriate_flag");
        flags.push_back(x.get<bool>());
      }
      rec.appropriate_flags = std::move(flags);
    }

    if (rec.kind == RatingKind::appropriateness) {
      if (rec.value < 1 || rec.value > 5)
        throw ValidationError(where + ": appropriateness value " +
                              std::to_string(rec.value) + " outside [1,5]");
    } else {
      if (rec.value < 0)
        throw ValidationError(where + ": negative diversity value");
      if (rec.appropriate_flags) {
        int appropriate = 0;
        for (bool f : *rec.appropriate_flags) appropriate += f ? 1 : 0;
        if (rec.value > appropriate)
          throw ValidationError(where + ": diversity value " +
                                std::to_string(rec.value) + " exceeds " +
                                std::to_string(appropriate) +
                                " flagged-appropriate responses");
      }
    }
    records.push_back(std::move(rec));
  });
  return records;
}

void write_dataset(const std::vector<MultiRefRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const MultiRefRecord& rec : records) {
    json obj;
    obj["context_id"] = rec.context.context_id;
    json turns = json::array();
    for (const Utterance& u : rec.context.turns) turns.push_back(u.raw);
    obj["context"] = std::move(turns);
    obj["reference"] = rec.original_ref.raw;
    json refs = json::array();
    for (const Utterance& u : rec.collected_refs) refs.push_back(u.raw);
    obj["multi_references"] = std::move(refs);
    out << obj.dump() << "\n";
  }
  if (!out) throw std::runtime_error("failed while writing " + path);
}

void cross_validate(const std::vector<RatingRecord>& ratings,
                    const std::vector<HypothesisRecord>& hyps) {
  std::unordered_map<std::string, std::size_t> hyp_count;
  for (const HypothesisRecord& rec : hyps)
    hyp_count[rec.context_id + "\x1f" + rec.model_id] = rec.hypotheses.size();
  for (const RatingRecord& r : ratings) {
    auto it = hyp_count.find(r.context_id + "\x1f" + r.model_id);
    if (it == hyp_count.end())
      throw ValidationError("rating for context '" + r.context_id + "' and model '" +
                            r.model_id + "' has no hypothesis record");
    if (r.kind == RatingKind::diversity &&
        r.value > static_cast<int>(it->second))
      throw ValidationError("diversity value " + std::to_string(r.value) +
                            " for context '" + r.context_id + "' and model '" +
                            r.model_id + "' exceeds " + std::to_string(it->second) +
                            " hypotheses");
  }
}

NgramStats dataset_stats(const std::vector<MultiRefRecord>& records) {
  if (records.empty()) throw ValidationError("dataset_stats: empty dataset");
  NgramStats stats;
  for (const MultiRefRecord& rec : records) {
    for (std::size_t n = 1; n <= 3; ++n) {
      std::set<Ngram> unique;
      for (const auto& [gram, count] : ngrams(rec.original_ref.tokens, n))
        unique.insert(gram);
      stats.original_mean[n - 1] += static_cast<double>(unique.size());
      for (const Utterance& ref : rec.collected_refs)
        for (const auto& [gram, count] : ngrams(ref.tokens, n)) unique.insert(gram);
      stats.multi_mean[n - 1] += static_cast<double>(unique.size());
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    stats.original_mean[i] /= static_cast<double>(records.size());
    stats.multi_mean[i] /= static_cast<double>(records.size());
  }
  return stats;
}

}  // namespace dialeval
