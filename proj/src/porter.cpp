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

#include "dialeval/porter.hpp"

#include <array>
#include <cstddef>

namespace dialeval {

namespace {

// Working state for one word. A word has the form [C](VC)^m[V]; the
// conditions below are the ones the rule tables refer to:
//   m        number of VC sequences in a prefix
//   *v*      the prefix contains a vowel
//   *d       the prefix ends with a double consonant
//   *o       the prefix ends consonant-vowel-consonant, final not w/x/y
struct Word {
  std::string w;

  bool is_cons(std::size_t i) const {
    switch (w[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !is_cons(i - 1);
      default:
        return true;
    }
  }

  int measure(std::size_t k) const {
    int m = 0;
    std::size_t i = 0;
    while (i < k && is_cons(i)) ++i;
    while (i < k) {
      while (i < k && !is_cons(i)) ++i;
      if (i == k) break;
      ++m;
      while (i < k && is_cons(i)) ++i;
    }
    return m;
  }

  bool has_vowel(std::size_t k) const {
    for (std::size_t i = 0; i < k; ++i)
      if (!is_cons(i)) return true;
    return false;
  }

  bool double_cons(std::size_t k) const {
    return k >= 2 && w[k - 1] == w[k - 2] && is_cons(k - 1);
  }

  bool cvc(std::size_t k) const {
    if (k < 3 || !is_cons(k - 3) || is_cons(k - 2) || !is_cons(k - 1)) return false;
    char c = w[k - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  // Length of the stem if the word ends with `suffix`, npos otherwise.
  std::size_t stem_if_ends(std::string_view suffix) const {
    if (w.size() < suffix.size()) return std::string::npos;
    std::size_t off = w.size() - suffix.size();
    for (std::size_t i = 0; i < suffix.size(); ++i)
      if (w[off + i] != suffix[i]) return std::string::npos;
    return off;
  }

  void replace_suffix(std::size_t stem_len, std::string_view repl) {
    w.resize(stem_len);
    w.append(repl);
  }
};

struct Rule {
  std::string_view suffix;
  std::string_view repl;
};

// Longest matching suffix decides the rule; if its m-condition fails, the
// whole step leaves the word unchanged. Lists are ordered so that any
// suffix that is a proper suffix of another comes after it.
constexpr std::array<Rule, 20> kStep2 = {{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
    {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3 = {{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
}};

constexpr std::array<Rule, 19> kStep4 = {{
    {"al", ""},  {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
    {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
    {"ent", ""}, {"ion", ""},  {"ou", ""},   {"ism", ""}, {"ate", ""},
    {"iti", ""}, {"ous", ""},  {"ive", ""},  {"ize", ""},
}};

// Finds the longest matching suffix in `rules`; applies `repl` iff
// cond(stem_len) holds. Returns once a suffix matched, applied or not.
template <std::size_t N, typename Cond>
void apply_table(Word& word, const std::array<Rule, N>& rules, Cond cond) {
  std::size_t best_len = 0;
  const Rule* best = nullptr;
  std::size_t best_stem = 0;
  for (const Rule& r : rules) {
    if (r.suffix.size() <= best_len) continue;
    std::size_t stem = word.stem_if_ends(r.suffix);
    if (stem != std::string::npos) {
      best = &r;
      best_len = r.suffix.size();
      best_stem = stem;
    }
  }
  if (best && cond(best_stem, best->suffix)) word.replace_suffix(best_stem, best->repl);
}

void step1a(Word& word) {
  std::size_t stem;
  if ((stem = word.stem_if_ends("sses")) != std::string::npos) {
    word.replace_suffix(stem, "ss");
  } else if ((stem = word.stem_if_ends("ies")) != std::string::npos) {
    word.replace_suffix(stem, "i");
  } else if (word.stem_if_ends("ss") != std::string::npos) {
    // keep
  } else if ((stem = word.stem_if_ends("s")) != std::string::npos) {
    word.replace_suffix(stem, "");
  }
}

void step1b(Word& word) {
  std::size_t stem;
  bool stripped = false;
  if ((stem = word.stem_if_ends("eed")) != std::string::npos) {
    if (word.measure(stem) > 0) word.replace_suffix(stem, "ee");
    return;  // "eed" blocks the "ed" rule regardless of the condition
  }
  if ((stem = word.stem_if_ends("ed")) != std::string::npos && word.has_vowel(stem)) {
    word.replace_suffix(stem, "");
    stripped = true;
  } else if ((stem = word.stem_if_ends("ing")) != std::string::npos && word.has_vowel(stem)) {
    word.replace_suffix(stem, "");
    stripped = true;
  }
  if (!stripped) return;
  if (word.stem_if_ends("at") != std::string::npos ||
      word.stem_if_ends("bl") != std::string::npos ||
      word.stem_if_ends("iz") != std::string::npos) {
    word.w.push_back('e');
  } else if (word.double_cons(word.w.size())) {
    char c = word.w.back();
    if (c != 'l' && c != 's' && c != 'z') word.w.pop_back();
  } else if (word.measure(word.w.size()) == 1 && word.cvc(word.w.size())) {
    word.w.push_back('e');
  }
}

void step1c(Word& word) {
  std::size_t stem = word.stem_if_ends("y");
  if (stem != std::string::npos && word.has_vowel(stem)) word.replace_suffix(stem, "i");
}

void step5a(Word& word) {
  std::size_t stem = word.stem_if_ends("e");
  if (stem == std::string::npos) return;
  int m = word.measure(stem);
  if (m > 1 || (m == 1 && !word.cvc(stem))) word.replace_suffix(stem, "");
}

void step5b(Word& word) {
  if (word.measure(word.w.size()) > 1 && word.double_cons(word.w.size()) &&
      word.w.back() == 'l') {
    word.w.pop_back();
  }
}

}  // namespace

std::string porter_stem(std::string_view token) {
  for (char c : token)
    if (c < 'a' || c > 'z') return std::string(token);
  if (token.size() <= 2) return std::string(token);

  Word word{std::string(token)};
  step1a(word);
  step1b(word);
  step1c(word);
  apply_table(word, kStep2, [&](std::size_t stem, std::string_view) {
    return word.measure(stem) > 0;
  });
  apply_table(word, kStep3, [&](std::size_t stem, std::string_view) {
    return word.measure(stem) > 0;
  });
  apply_table(word, kStep4, [&](std::size_t stem, std::string_view suffix) {
    if (word.measure(stem) <= 1) return false;
    if (suffix == "ion") {
      char c = stem > 0 ? word.w[stem - 1] : '\0';
      return c == 's' || c == 't';
    }
    return true;
  });
  step5a(word);
  step5b(word);
  return word.w;
}

}  // namespace dialeval
