// Copyright 2026 The bnpunct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bnpunct/corpus.hpp"
#include "bnpunct/restore.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bnpunct;

namespace {

// A tagger that knows the gold label of every word. Windows do not carry
// gold labels, so it recovers the word index from first_word.
struct GoldTagger {
  std::vector<PunctClass> gold;
  std::vector<std::vector<PunctClass>> operator()(std::span<const SubwordSequence> windows) const {
    std::vector<std::vector<PunctClass>> out;
    for (const auto& w : windows) {
      std::vector<PunctClass> labels(w.length(), PunctClass::kO);
      std::size_t word = w.first_word;
      for (std::size_t t = 0; t < w.length(); ++t) {
        if (w.labels[t] != PunctClass::kIgnore) labels[t] = gold[word++];
      }
      out.push_back(std::move(labels));
    }
    return out;
  }
};

std::string strip_punct(const Document& d) {
  std::string out;
  for (const auto& t : d.tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

std::size_t word_count(const std::string& s) { return parse_labeled(s).tokens.size(); }

}  // namespace

TEST_CASE("gold tagger restores the original text") {
  Rng rng(1);
  std::vector<std::string> corpus;
  for (int i = 0; i < 300; ++i) corpus.push_back(fixtures::random_word(rng));
  const BpeModel bpe = train_bpe(corpus, 60);
  for (int i = 0; i < 200; ++i) {
    const Document doc = fixtures::random_document(rng, 120);
    std::vector<PunctClass> gold;
    for (const auto& t : doc.tokens) gold.push_back(t.label);
    RestoreRequest req{strip_punct(doc), 8 + uniform_below(rng, 40), 0};
    req.stride = 1 + uniform_below(rng, req.seq_len - 2);
    CHECK(restore_text(bpe, GoldTagger{gold}, req) == render(doc));
  }
}

TEST_CASE("restore with a real model preserves words") {
  const auto docs = generate_synthetic(3, 400);
  const BpeModel bpe = train_bpe(docs, 80);
  const ModelParams p = init_params(make_dims(bpe.vocab_size(), 6), 4);
  for (const auto& d : docs) {
    const std::string raw = strip_punct(d);
    const std::string out = restore_text(bpe, p, RestoreRequest{raw, 16, 0});
    CHECK(word_count(out) == d.tokens.size());
    const Document back = parse_labeled(out);
    for (std::size_t k = 0; k < back.tokens.size(); ++k) CHECK(back.tokens[k].surface == d.tokens[k].surface);
  }
  // Short text: a single window, one prediction per word.
  const auto windows = sliding_windows(bpe, std::vector<std::string>{docs[0].tokens[0].surface}, 64, 0);
  CHECK(windows.size() == 1);
  CHECK(restore_text(bpe, p, RestoreRequest{"", 16, 0}).empty());
}

TEST_CASE("restore request validation") {
  CHECK_THROWS_AS(RestoreRequest({"x", 2, 0}).validate(), ConfigError);
  CHECK_THROWS_AS(RestoreRequest({"x", 10, 9}).validate(), ConfigError);
  CHECK_NOTHROW(RestoreRequest({"x", 10, 8}).validate());
  CHECK(RestoreRequest({"x", 10, 0}).effective_stride() == 5);
}

TEST_CASE("every word is covered with the most central window") {
  Rng rng(5);
  std::vector<std::string> corpus;
  for (int i = 0; i < 100; ++i) corpus.push_back(fixtures::random_word(rng));
  const BpeModel bpe = train_bpe(corpus, 30);
  std::vector<std::string> words;
  for (int i = 0; i < 60; ++i) words.push_back(fixtures::random_word(rng));
  const auto windows = sliding_windows(bpe, words, 20, 9);
  CHECK(windows.size() > 1);
  std::vector<int> seen(words.size(), 0);
  for (const auto& w : windows) {
    REQUIRE(w.length() == 20);
    for (std::size_t k = 0; k < w.words.size(); ++k) seen[w.first_word + k]++;
  }
  for (int s : seen) CHECK(s >= 1);
}
