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

#include <sstream>

#include "bnpunct/corpus.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bnpunct;

TEST_CASE("normalize collapses whitespace and strips non-target punctuation") {
  CHECK(normalize_text("ভালো   আছি।") == "ভালো আছি।");
  CHECK(normalize_text("") == "");
  CHECK(normalize_text("a;b") == "ab");
  CHECK(normalize_text("  x\t\ny  ") == "x y");
  CHECK(normalize_text("\"হ্যাঁ\" (ঠিক) — তাই…") == "হ্যাঁ ঠিক তাই");
  CHECK(normalize_text("ok.") == "ok।");
  CHECK(normalize_text("কে?! ,হ্যাঁ") == "কে?! ,হ্যাঁ");
}

TEST_CASE("normalize applies NFC") {
  // 'e' + combining acute becomes the precomposed character.
  CHECK(normalize_text("cafe\xCC\x81") == "caf\xC3\xA9");
}

TEST_CASE("normalize is idempotent on random input") {
  Rng rng(11);
  const std::vector<std::string> junk = {" ", "  ", "\t", ".", ";", "\"", "(", "—", "…", "।", ",", "?", "!", "-"};
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const auto n = uniform_below(rng, 12);
    for (std::size_t k = 0; k < n; ++k) {
      s += uniform01(rng) < 0.5 ? fixtures::random_word(rng) : junk[uniform_below(rng, junk.size())];
    }
    const auto once = normalize_text(s);
    CHECK(normalize_text(once) == once);
  }
}

TEST_CASE("parse_labeled attaches marks to the preceding token") {
  auto d = parse_labeled("আমি ভালো আছি।");
  REQUIRE(d.tokens.size() == 3);
  CHECK(d.tokens[0] == LabeledToken{"আমি", PunctClass::kO});
  CHECK(d.tokens[1] == LabeledToken{"ভালো", PunctClass::kO});
  CHECK(d.tokens[2] == LabeledToken{"আছি", PunctClass::kPeriod});

  d = parse_labeled("কে?!");
  REQUIRE(d.tokens.size() == 1);
  CHECK(d.tokens[0] == LabeledToken{"কে", PunctClass::kQuestion});

  d = parse_labeled("। আমি");
  REQUIRE(d.tokens.size() == 1);
  CHECK(d.tokens[0] == LabeledToken{"আমি", PunctClass::kO});

  CHECK(parse_labeled("").tokens.empty());
  CHECK(parse_labeled("! ? ,").tokens.empty());
}

TEST_CASE("render is the inverse of parse_labeled") {
  Document d;
  d.tokens = {{"আমি", PunctClass::kO}, {"আছি", PunctClass::kPeriod}};
  CHECK(render(d) == "আমি আছি।");
  CHECK(render(Document{}) == "");

  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const Document doc = fixtures::random_document(rng);
    REQUIRE(is_well_formed(doc));
    CHECK(parse_labeled(render(doc)).tokens == doc.tokens);
  }
}

TEST_CASE("TSV format") {
  Document d;
  d.tokens = {{"আছি", PunctClass::kPeriod}};
  std::ostringstream os;
  write_tsv(os, std::vector<Document>{d});
  CHECK(os.str() == "আছি\tPERIOD\n\n");

  Rng rng(9);
  std::vector<Document> docs;
  for (int i = 0; i < 50; ++i) {
    auto doc = fixtures::random_document(rng);
    if (!doc.tokens.empty()) docs.push_back(doc);
  }
  std::ostringstream all;
  write_tsv(all, docs);
  std::istringstream in(all.str());
  const auto back = read_tsv(in);
  REQUIRE(back.size() == docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) CHECK(back[i].tokens == docs[i].tokens);
}

TEST_CASE("TSV errors name the line") {
  std::istringstream bad_label("a\tO\nx\tFOO\n\n");
  CHECK_THROWS_WITH_AS(read_tsv(bad_label), doctest::Contains("line 2"), DataError);
  std::istringstream bad_fields("a\tO\textra\n\n");
  CHECK_THROWS_WITH_AS(read_tsv(bad_fields), doctest::Contains("line 1"), DataError);
  std::istringstream ignore_label("a\tIGNORE\n\n");
  CHECK_THROWS_AS(read_tsv(ignore_label), DataError);
}

TEST_CASE("stats count labels") {
  CHECK(stats({}).total == 0);
  const auto s = stats(std::vector<Document>{parse_labeled("আমি আছি।")});
  CHECK(s.total == 2);
  CHECK(s.count(PunctClass::kO) == 1);
  CHECK(s.count(PunctClass::kPeriod) == 1);
}

TEST_CASE("synthetic generator") {
  CHECK(generate_synthetic(1, 0).empty());
  const auto a = generate_synthetic(42, 3000);
  const auto b = generate_synthetic(42, 3000);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].tokens == b[i].tokens);
  CHECK(stats(a).total == 3000);

  const auto big = stats(generate_synthetic(7, 100000));
  for (PunctClass c : kAllClasses) {
    const double freq = static_cast<double>(big.count(c)) / static_cast<double>(big.total);
    CHECK(std::abs(freq - kDefaultPriors[class_index(c)]) <= 0.01);
  }

  CHECK_THROWS_AS(generate_synthetic(1, 10, {0.5, 0.5, 0.5, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(generate_synthetic(1, 10, {1.2, -0.2, 0.0, 0.0, 0.0}), ConfigError);
}
