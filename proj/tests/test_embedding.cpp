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

#include "dialeval/embedding.hpp"

#include <cmath>
#include <random>

#include "dialeval/errors.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace dialeval;

namespace {

EmbeddingTable tiny_table() {
  EmbeddingTable t;
  t.insert("a", {1.0, 0.0});
  t.insert("b", {0.0, 1.0});
  t.insert("c", {0.0, -2.0});
  return t;
}

}  // namespace

TEST_CASE("load word2vec text format with header") {
  testutil::TempDir dir;
  std::string path = dir.file("vec.txt");
  testutil::write_file(path, "2 3\nfoo 1.0 2.0 3.0\nbar -1 0 0.5\n");
  EmbeddingTable t = EmbeddingTable::load(path);
  CHECK(t.size() == 2);
  CHECK(t.dimension() == 3);
  CHECK((*t.find("bar"))[2] == doctest::Approx(0.5));
}

TEST_CASE("load word2vec text format without header") {
  testutil::TempDir dir;
  std::string path = dir.file("vec.txt");
  testutil::write_file(path, "foo 1.0 2.0 3.0\nbar -1 0 0.5\n");
  EmbeddingTable t = EmbeddingTable::load(path);
  CHECK(t.size() == 2);
  CHECK(t.dimension() == 3);
}

TEST_CASE("embedding loader rejects bad files with line numbers") {
  testutil::TempDir dir;
  std::string path = dir.file("vec.txt");

  testutil::write_file(path, "foo 1.0 2.0 3.0\nbar 1 2\n");
  CHECK_THROWS_WITH_AS(EmbeddingTable::load(path),
                       doctest::Contains(":2"), ValidationError);

  testutil::write_file(path, "foo 1.0 x 3.0\n");
  CHECK_THROWS_WITH_AS(EmbeddingTable::load(path),
                       doctest::Contains("non-numeric"), ValidationError);

  testutil::write_file(path, "");
  CHECK_THROWS_AS(EmbeddingTable::load(path), ValidationError);
}

TEST_CASE("duplicate tokens keep the first vector") {
  testutil::TempDir dir;
  std::string path = dir.file("vec.txt");
  testutil::write_file(path, "foo 1.0 0.0\nfoo 9.0 9.0\n");
  EmbeddingTable t = EmbeddingTable::load(path);
  CHECK(t.size() == 1);
  CHECK((*t.find("foo"))[0] == doctest::Approx(1.0));
}

TEST_CASE("sentence_vector average and extrema") {
  EmbeddingTable t = tiny_table();
  std::vector<double> avg = sentence_vector({"a", "b"}, t, VectorKind::average);
  CHECK(avg[0] == doctest::Approx(0.5));
  CHECK(avg[1] == doctest::Approx(0.5));

  std::vector<double> ext = sentence_vector({"a", "c"}, t, VectorKind::extrema);
  CHECK(ext[0] == doctest::Approx(1.0));
  CHECK(ext[1] == doctest::Approx(-2.0));

  // +v / -v magnitude tie resolves positive
  EmbeddingTable t2;
  t2.insert("p", {2.0});
  t2.insert("q", {-2.0});
  CHECK(sentence_vector({"p", "q"}, t2, VectorKind::extrema)[0] == doctest::Approx(2.0));
  CHECK(sentence_vector({"q", "p"}, t2, VectorKind::extrema)[0] == doctest::Approx(2.0));

  // OOV tokens are skipped; an all-OOV sentence is an error
  CHECK(sentence_vector({"a", "zzz"}, t, VectorKind::average)[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(sentence_vector({"zzz"}, t, VectorKind::average), PairScoringError);
}

TEST_CASE("embedding_metric examples") {
  EmbeddingTable t = tiny_table();
  CHECK(embedding_metric({"a"}, {"a"}, t, VectorKind::average) == doctest::Approx(1.0));
  CHECK(embedding_metric({"a"}, {"b"}, t, VectorKind::average) == doctest::Approx(0.0));
  CHECK(embedding_metric({"a", "b"}, {"a"}, t, VectorKind::average) ==
        doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("greedy_matching examples") {
  EmbeddingTable t = tiny_table();
  CHECK(greedy_matching({"a", "b"}, {"a", "b"}, t) == doctest::Approx(1.0));
  CHECK(greedy_matching({"a"}, {"b"}, t) == doctest::Approx(0.0));
  CHECK(greedy_matching({"a", "b"}, {"a"}, t) == doctest::Approx(0.75));
}

TEST_CASE("embedding metrics are symmetric and scale invariant") {
  std::mt19937 rng(23);
  std::normal_distribution<double> comp(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    EmbeddingTable t, scaled;
    for (char c = 'a'; c <= 'e'; ++c) {
      std::vector<double> v(3);
      for (double& x : v) x = comp(rng);
      std::vector<double> v4(v);
      for (double& x : v4) x *= 4.0;
      t.insert(std::string(1, c), v);
      scaled.insert(std::string(1, c), v4);
    }
    Tokens x = testutil::random_sentence(rng, 6, 5);
    Tokens y = testutil::random_sentence(rng, 6, 5);
    for (VectorKind kind : {VectorKind::average, VectorKind::extrema}) {
      double fwd = embedding_metric(x, y, t, kind);
      CHECK(fwd == doctest::Approx(embedding_metric(y, x, t, kind)));
      CHECK(fwd == doctest::Approx(embedding_metric(x, y, scaled, kind)));
      CHECK(fwd >= -1.0 - 1e-12);
      CHECK(fwd <= 1.0 + 1e-12);
    }
    double g = greedy_matching(x, y, t);
    CHECK(g == doctest::Approx(greedy_matching(y, x, t)));
    CHECK(g == doctest::Approx(greedy_matching(x, y, scaled)));
  }
}

TEST_CASE("greedy_matching equals 1 on equal token multisets") {
  EmbeddingTable t = tiny_table();
  CHECK(greedy_matching({"a", "b", "a"}, {"b", "a", "a"}, t) == doctest::Approx(1.0));
}

TEST_CASE("extrema of a single-token sentence is that token's vector") {
  EmbeddingTable t = tiny_table();
  std::vector<double> v = sentence_vector({"c"}, t, VectorKind::extrema);
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(-2.0));
}

TEST_CASE("sentence embedding provider") {
  testutil::TempDir dir;
  std::string path = dir.file("sent.jsonl");
  testutil::write_file(path,
                       "{\"text\": \"hello there\", \"vector\": [1.0, 0.0]}\n"
                       "{\"text\": \"general kenobi\", \"vector\": [0.0, 1.0]}\n"
                       "{\"text\": \"hello again\", \"vector\": [1.0, 0.0]}\n");
  SentenceEmbeddingProvider p = SentenceEmbeddingProvider::load(path);
  CHECK(p.size() == 3);
  CHECK(p.dimension() == 2);
  CHECK(sentence_embedding_cosine("hello there", "hello again", p) ==
        doctest::Approx(1.0));
  CHECK(sentence_embedding_cosine("hello there", "general kenobi", p) ==
        doctest::Approx(0.0));
  CHECK_THROWS_WITH_AS(sentence_embedding_cosine("missing text", "hello there", p),
                       doctest::Contains("missing text"), PairScoringError);
}

TEST_CASE("sentence embedding provider validates input") {
  testutil::TempDir dir;
  std::string path = dir.file("sent.jsonl");
  testutil::write_file(path, "{\"text\": \"a\", \"vector\": [1.0]}\n"
                             "{\"text\": \"b\", \"vector\": [1.0, 2.0]}\n");
  CHECK_THROWS_WITH_AS(SentenceEmbeddingProvider::load(path), doctest::Contains(":2"),
                       ValidationError);
  testutil::write_file(path, "not json\n");
  CHECK_THROWS_AS(SentenceEmbeddingProvider::load(path), ValidationError);
}

TEST_CASE("cosine handles zero vectors") {
  std::vector<double> zero{0.0, 0.0};
  std::vector<double> unit{1.0, 0.0};
  CHECK(cosine(zero, unit) == 0.0);
  CHECK(cosine(unit, unit) == doctest::Approx(1.0));
}
