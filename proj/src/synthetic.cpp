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

#include <cmath>
#include <set>

#include "bnpunct/corpus.hpp"
#include "bnpunct/rng.hpp"
#include "bnpunct/unicode.hpp"

namespace bnpunct {
namespace {

constexpr std::uint64_t kLanguageSeed = 0x626e70756e6374ULL;
constexpr std::size_t kOWords = 160;
constexpr std::size_t kCueWords = 12;
constexpr std::size_t kFollowerWords = 8;
constexpr double kCueProb = 0.85;
constexpr double kFollowerProb = 0.85;
constexpr std::size_t kMinDocTokens = 24;
constexpr std::size_t kMaxDocTokens = 64;

// Consonants and dependent vowel signs of the Bengali block, all NFC-stable.
constexpr char32_t kConsonants[] = {
    U'ক', U'খ', U'গ', U'ঘ', U'চ', U'ছ', U'জ', U'ঝ', U'ট', U'ঠ', U'ড',
    U'ঢ', U'ণ', U'ত', U'থ', U'দ', U'ধ', U'ন', U'প', U'ফ', U'ব', U'ভ',
    U'ম', U'য', U'র', U'ল', U'শ', U'ষ', U'স', U'হ'};
constexpr char32_t kVowelSigns[] = {U'া', U'ি', U'ী', U'ু', U'ূ', U'ে'};

std::string pseudo_word(Rng& rng) {
  std::string word;
  const std::size_t syllables = 2 + uniform_below(rng, 2);
  for (std::size_t s = 0; s < syllables; ++s) {
    unicode::append(word, kConsonants[uniform_below(rng, std::size(kConsonants))]);
    if (uniform01(rng) < 0.6) {
      unicode::append(word, kVowelSigns[uniform_below(rng, std::size(kVowelSigns))]);
    }
  }
  return word;
}

std::vector<std::string> draw_vocab(Rng& rng, std::set<std::string>& used,
                                    std::size_t n) {
  std::vector<std::string> words;
  while (words.size() < n) {
    std::string w = pseudo_word(rng);
    if (used.insert(w).second) words.push_back(std::move(w));
  }
  return words;
}

void validate_priors(const ClassPriors& priors) {
  double sum = 0.0;
  for (double p : priors) {
    if (!std::isfinite(p) || p < 0.0) {
      throw ConfigError("class priors must be finite and non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("class priors must sum to 1");
  }
}

PunctClass draw_label(Rng& rng, const ClassPriors& priors) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    acc += priors[i];
    if (u < acc) return class_from_index(i);
  }
  // u landed in the rounding gap above the last cumulative sum.
  for (std::size_t i = kNumClasses; i-- > 0;) {
    if (priors[i] > 0.0) return class_from_index(i);
  }
  return PunctClass::kO;
}

bool is_terminal(PunctClass c) {
  return c == PunctClass::kPeriod || c == PunctClass::kQuestion ||
         c == PunctClass::kExclamation;
}

}  // namespace

std::vector<Document> generate_synthetic(std::uint64_t seed, std::size_t n_tokens,
                                         const ClassPriors& priors) {
  validate_priors(priors);
  std::vector<Document> docs;
  if (n_tokens == 0) return docs;

  // The vocabularies form the synthetic "language" and are shared by every
  // seed, so splits generated with different seeds are mutually learnable.
  Rng vocab_rng(derive_seed(kLanguageSeed, 0));
  std::set<std::string> used;
  const auto o_words = draw_vocab(vocab_rng, used, kOWords);
  std::array<std::vector<std::string>, kNumClasses> cue;
  std::array<std::vector<std::string>, kNumClasses> follower;
  for (PunctClass c : kPunctClasses) {
    cue[class_index(c)] = draw_vocab(vocab_rng, used, kCueWords);
    follower[class_index(c)] = draw_vocab(vocab_rng, used, kFollowerWords);
  }

  Rng rng(derive_seed(seed, 1));
  auto pick = [&](const std::vector<std::string>& v) -> const std::string& {
    return v[uniform_below(rng, v.size())];
  };
  auto new_target = [&] {
    return kMinDocTokens + uniform_below(rng, kMaxDocTokens - kMinDocTokens + 1);
  };

  Document doc;
  std::size_t target = new_target();
  PunctClass prev = PunctClass::kO;
  for (std::size_t i = 0; i < n_tokens; ++i) {
    const PunctClass label = draw_label(rng, priors);
    std::string word;
    if (label != PunctClass::kO) {
      word = uniform01(rng) < kCueProb ? pick(cue[class_index(label)]) : pick(o_words);
    } else if (prev != PunctClass::kO) {
      word = uniform01(rng) < kFollowerProb ? pick(follower[class_index(prev)])
                                            : pick(o_words);
    } else {
      word = pick(o_words);
    }
    doc.tokens.push_back({std::move(word), label});
    prev = label;

    if (is_terminal(label) && doc.tokens.size() >= target) {
      doc.id = "syn-" + std::to_string(docs.size());
      doc.source = Source::kSynthetic;
      docs.push_back(std::move(doc));
      doc = Document{};
      target = new_target();
      prev = PunctClass::kO;
    }
  }
  if (!doc.tokens.empty()) {
    doc.id = "syn-" + std::to_string(docs.size());
    doc.source = Source::kSynthetic;
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace bnpunct
