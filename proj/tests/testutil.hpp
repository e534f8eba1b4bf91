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

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dialeval/corpus.hpp"
#include "dialeval/embedding.hpp"
#include "dialeval/text.hpp"

namespace testutil {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<int> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("dialeval_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

#ifdef DIALEVAL_BIN
// Runs the dialeval binary with shell-quoted args appended verbatim.
inline CliResult run_cli(const std::string& args, const TempDir& dir) {
  std::string out_path = dir.file("cli_stdout.txt");
  std::string err_path = dir.file("cli_stderr.txt");
  std::string cmd = std::string(DIALEVAL_BIN) + " " + args + " >" + out_path + " 2>" +
                    err_path;
  int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}
#endif

inline std::string table5_dataset_jsonl() {
  return R"({"context_id": "t5", "context": ["excuse me . check please ."], "reference": "ok , how was everything ?", "multi_references": ["i 'll get it right away .", "here is the check .", "no problem , let me get your server .", "i 'll be right back with it ."]})"
         "\n";
}

inline std::string table5_hyps_jsonl() {
  return R"({"context_id": "t5", "model_id": "paper", "hypotheses": ["sure , i 'll grab it and be right with you ."]})"
         "\n";
}

inline std::string join_tokens(const dialeval::Tokens& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

inline dialeval::Utterance utt(const std::string& text) {
  return dialeval::make_utterance(text, dialeval::TokenizerMode::pretokenized);
}

inline dialeval::Tokens random_sentence(std::mt19937& rng, int max_len = 8,
                                        int alphabet = 5, int min_len = 1) {
  std::uniform_int_distribution<int> len_dist(min_len, max_len);
  std::uniform_int_distribution<int> tok_dist(0, alphabet - 1);
  dialeval::Tokens tokens;
  int len = len_dist(rng);
  for (int i = 0; i < len; ++i)
    tokens.push_back(std::string(1, static_cast<char>('a' + tok_dist(rng))));
  return tokens;
}

// A small corpus over a closed vocabulary, with every vocabulary word in the
// embedding table and every utterance text in the sentence provider.
struct SyntheticCorpus {
  std::vector<dialeval::MultiRefRecord> dataset;
  std::vector<dialeval::HypothesisRecord> hyps;
  std::vector<dialeval::RatingRecord> ratings;
  dialeval::EmbeddingTable table;
  dialeval::SentenceEmbeddingProvider provider;
};

inline SyntheticCorpus make_corpus(std::mt19937& rng, int contexts, int models,
                                   int collected_refs = 3, int hyps_per_context = 2,
                                   int raters = 4) {
  SyntheticCorpus corpus;
  constexpr int kAlphabet = 6;
  std::normal_distribution<double> comp(0.0, 1.0);
  for (int i = 0; i < kAlphabet; ++i) {
    std::vector<double> vec(4);
    for (double& x : vec) x = comp(rng);
    corpus.table.insert(std::string(1, static_cast<char>('a' + i)), std::move(vec));
  }

  auto register_text = [&](const dialeval::Utterance& u) {
    if (!corpus.provider.find(u.raw)) {
      std::vector<double> vec(4);
      for (double& x : vec) x = comp(rng);
      corpus.provider.insert(u.raw, std::move(vec));
    }
  };

  std::uniform_int_distribution<int> rating_dist(1, 5);
  for (int c = 0; c < contexts; ++c) {
    dialeval::MultiRefRecord rec;
    rec.context.context_id = "c" + std::to_string(c);
    rec.context.turns.push_back(utt(join_tokens(random_sentence(rng, 8, kAlphabet))));
    rec.original_ref = utt(join_tokens(random_sentence(rng, 8, kAlphabet)));
    register_text(rec.original_ref);
    for (int r = 0; r < collected_refs; ++r) {
      dialeval::Utterance u = utt(join_tokens(random_sentence(rng, 8, kAlphabet)));
      register_text(u);
      rec.collected_refs.push_back(std::move(u));
    }
    corpus.dataset.push_back(std::move(rec));

    for (int m = 0; m < models; ++m) {
      dialeval::HypothesisRecord h;
      h.context_id = "c" + std::to_string(c);
      h.model_id = "m" + std::to_string(m);
      for (int k = 0; k < hyps_per_context; ++k) {
        dialeval::Utterance u = utt(join_tokens(random_sentence(rng, 8, kAlphabet)));
        register_text(u);
        h.hypotheses.push_back(std::move(u));
      }
      corpus.hyps.push_back(std::move(h));

      for (int r = 0; r < raters; ++r) {
        dialeval::RatingRecord rating;
        rating.context_id = "c" + std::to_string(c);
        rating.model_id = "m" + std::to_string(m);
        rating.rater_id = "r" + std::to_string(r);
        rating.kind = dialeval::RatingKind::appropriateness;
        rating.value = rating_dist(rng);
        corpus.ratings.push_back(std::move(rating));
      }
    }
  }
  return corpus;
}

inline std::string dataset_to_jsonl(const std::vector<dialeval::MultiRefRecord>& records) {
  std::ostringstream out;
  for (const auto& rec : records) {
    out << "{\"context_id\": \"" << rec.context.context_id << "\", \"context\": [";
    for (std::size_t i = 0; i < rec.context.turns.size(); ++i) {
      if (i) out << ", ";
      out << "\"" << rec.context.turns[i].raw << "\"";
    }
    out << "], \"reference\": \"" << rec.original_ref.raw
        << "\", \"multi_references\": [";
    for (std::size_t i = 0; i < rec.collected_refs.size(); ++i) {
      if (i) out << ", ";
      out << "\"" << rec.collected_refs[i].raw << "\"";
    }
    out << "]}\n";
  }
  return out.str();
}

inline std::string hyps_to_jsonl(const std::vector<dialeval::HypothesisRecord>& records) {
  std::ostringstream out;
  for (const auto& rec : records) {
    out << "{\"context_id\": \"" << rec.context_id << "\", \"model_id\": \""
        << rec.model_id << "\", \"hypotheses\": [";
    for (std::size_t i = 0; i < rec.hypotheses.size(); ++i) {
      if (i) out << ", ";
      out << "\"" << rec.hypotheses[i].raw << "\"";
    }
    out << "]}\n";
  }
  return out.str();
}

inline std::string ratings_to_jsonl(const std::vector<dialeval::RatingRecord>& records) {
  std::ostringstream out;
  for (const auto& rec : records) {
    out << "{\"context_id\": \"" << rec.context_id << "\", \"model_id\": \""
        << rec.model_id << "\", \"rater_id\": \"" << rec.rater_id
        << "\", \"kind\": \"" << dialeval::to_string(rec.kind)
        << "\", \"value\": " << rec.value << "}\n";
  }
  return out.str();
}

}  // namespace testutil
