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

#include <stdexcept>
#include <string>

namespace dialeval {

// Bad input data, unusable configuration, or a violated precondition that
// the caller could have checked. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A single (hypothesis, reference) pair could not be scored, e.g. every
// token is out of vocabulary. Aggregation layers skip the pair or record it
// as missing instead of treating it as zero.
class PairScoringError : public std::runtime_error {
 public:
  explicit PairScoringError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dialeval
