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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dialeval/text.hpp"

namespace dialeval {

struct Context {
  std::string context_id;
  std::vector<Utterance> turns;  // dialogue order
  bool operator==(const Context&) const = default;
};

// One dialogue context with its original reference and the collected
// alternative references. The scored reference set is original first,
// then the collected ones in stored order.
struct MultiRefRecord {
  Context context;
  Utterance original_ref;
  std::vector<Utterance> collected_refs;

  std::vector<Utterance> all_refs() const;
  bool operator==(const MultiRefRecord&) const = default;
};

struct HypothesisRecord {
  std::string context_id;
  std::string model_id;
  std::vector<Utterance> hypotheses;
  bool operator==(const HypothesisRecord&) const = default;
};

enum class RatingKind { appropriateness, diversity };

std::string to_string(RatingKind kind);

struct RatingRecord {
  std::string context_id;
  std::string model_id;
  std::string rater_id;
  RatingKind kind = RatingKind::appropriateness;
  int value = 0;
  std::optional<std::vector<bool>> appropriate_flags;  // diversity kind only
  bool operator==(const RatingRecord&) const = default;
};

// JSONL loaders. Validation is fail-fast with file:line diagnostics; a
// partially valid file never yields a partial result.
std::vector<MultiRefRecord> load_dataset(const std::string& path,
                                         TokenizerMode mode = TokenizerMode::pretokenized);
std::vector<HypothesisRecord> load_hypotheses(
    const std::string& path, const std::vector<MultiRefRecord>& dataset,
    TokenizerMode mode = TokenizerMode::pretokenized);
std::vector<RatingRecord> load_ratings(const std::string& path);

void write_dataset(const std::vector<MultiRefRecord>& records, const std::string& path);

// Checks that need hypotheses loaded: every rating resolves to a hypothesis
// record, and diversity values never exceed the hypothesis count.
void cross_validate(const std::vector<RatingRecord>& ratings,
                    const std::vector<HypothesisRecord>& hyps);

// Mean per-record count of unique n-grams in the reference set, for the
// original reference alone and for the full multi-reference set.
struct NgramStats {
  std::array<double, 3> original_mean{};  // index i -> n = i+1
  std::array<double, 3> multi_mean{};
};

NgramStats dataset_stats(const std::vector<MultiRefRecord>& records);

}  // namespace dialeval
