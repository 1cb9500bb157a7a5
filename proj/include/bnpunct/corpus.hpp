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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnpunct/punct.hpp"

namespace bnpunct {

struct LabeledToken {
  std::string surface;  // non-empty, no whitespace, no target marks
  PunctClass label = PunctClass::kO;

  friend bool operator==(const LabeledToken&, const LabeledToken&) = default;
};

enum class Source : std::uint8_t { kNews, kRef, kAsr, kSynthetic, kOther };

std::string_view source_name(Source s);

struct Document {
  std::string id;
  Source source = Source::kOther;
  std::vector<LabeledToken> tokens;
};

// Token counts per label, as in a dataset distribution table.
struct DatasetStats {
  std::array<std::uint64_t, kNumClasses> per_class{};  // indexed by class_index
  std::uint64_t total = 0;

  std::uint64_t count(PunctClass c) const { return per_class[class_index(c)]; }
  // Builds stats from per-class counts; total is their sum.
  static DatasetStats from_counts(std::uint64_t period, std::uint64_t comma,
                                  std::uint64_t question,
                                  std::uint64_t exclamation, std::uint64_t o);
};

// NFC, "." -> "।", strip non-target punctuation and controls, collapse
// whitespace runs to one space, trim. Idempotent.
std::string normalize_text(std::string_view raw);

// Splits normalized text into labeled tokens. A target mark labels the most
// recent token if that token has not received a mark yet; otherwise (or with
// no preceding token) the mark is dropped.
Document parse_labeled(std::string_view normalized);

// Inverse of parse_labeled for well-formed documents.
std::string render(const Document& doc);

// True when every token satisfies the LabeledToken invariants.
bool is_well_formed(const Document& doc);

// TSV corpus: "surface\tLABEL\n" per token, a blank line after each document.
void write_tsv(std::ostream& out, std::span<const Document> docs);
void save_tsv(std::span<const Document> docs, const std::filesystem::path& path);
// Throws DataError naming the 1-based line number on malformed lines.
std::vector<Document> read_tsv(std::istream& in, Source source = Source::kOther);
std::vector<Document> load_tsv(const std::filesystem::path& path,
                               Source source = Source::kOther);

DatasetStats stats(std::span<const Document> docs);
std::string format_stats(const DatasetStats& s);

// Label priors indexed by class_index (O, PERIOD, COMMA, QUESTION, EXCLAMATION).
using ClassPriors = std::array<double, kNumClasses>;

inline constexpr ClassPriors kDefaultPriors = {0.85, 0.08, 0.05, 0.01, 0.01};

// Deterministic synthetic corpus of n_tokens pseudo-Bangla words. Labels are
// drawn i.i.d. from the priors; the word carrying a mark is usually drawn
// from a per-class cue vocabulary and the following word from a per-class
// follower vocabulary, so the labels are learnable from context. Throws
// ConfigError on invalid priors.
std::vector<Document> generate_synthetic(std::uint64_t seed, std::size_t n_tokens,
                                         const ClassPriors& priors = kDefaultPriors);

}  // namespace bnpunct
