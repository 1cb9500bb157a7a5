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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnpunct/corpus.hpp"
#include "bnpunct/punct.hpp"

namespace bnpunct {

using TokenId = std::int32_t;
using SymbolPair = std::pair<std::string, std::string>;

// Byte-pair-encoding model. Non-final pieces of a word carry the "@@" suffix.
// Immutable once constructed.
class BpeModel {
 public:
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kUnk = 1;
  static constexpr TokenId kBos = 2;
  static constexpr TokenId kEos = 3;
  static constexpr std::size_t kNumSpecials = 4;
  static constexpr std::string_view kMarker = "@@";

  // `pieces` lists the vocabulary in id order, starting with the specials.
  // Throws DataError if the invariants do not hold.
  BpeModel(std::vector<SymbolPair> merges, std::vector<std::string> pieces);

  const std::vector<SymbolPair>& merges() const { return merges_; }
  std::size_t vocab_size() const { return pieces_.size(); }
  const std::string& piece(TokenId id) const { return pieces_.at(static_cast<std::size_t>(id)); }
  std::optional<TokenId> find(std::string_view piece) const;
  // Id of a piece, or kUnk.
  TokenId lookup(std::string_view piece) const;

  // Applies the merges to a word in training order. The returned pieces are
  // not necessarily in the vocabulary.
  std::vector<std::string> segment(std::string_view word) const;

  // FNV-1a over the id-ordered vocabulary; used to pair models with
  // checkpoints.
  std::uint64_t vocab_hash() const;

  static std::string_view special_name(TokenId id);

 private:
  std::vector<SymbolPair> merges_;
  std::vector<std::string> pieces_;
  std::unordered_map<std::string, TokenId> index_;
  std::map<SymbolPair, std::size_t> rank_;
};

// Splits a word into code points, suffixing every non-final one with "@@".
std::vector<std::string> initial_symbols(std::string_view word);

// Joins two adjacent symbols: ("ab@@", "c") -> "abc".
std::string join_symbols(const std::string& left, const std::string& right);

// Replaces non-overlapping occurrences of `pair`, scanning left to right.
void apply_merge(std::vector<std::string>& symbols, const SymbolPair& pair);

// Greedy BPE. Pair frequency counts every adjacent occurrence weighted by
// word frequency; ties go to the lexicographically smallest pair. Stops after
// num_merges or once no pair occurs at least twice. Throws DataError on an
// empty corpus.
BpeModel train_bpe(std::span<const std::string> words, std::size_t num_merges);
BpeModel train_bpe(std::span<const Document> docs, std::size_t num_merges);

inline constexpr std::size_t kDefaultNumMerges = 4000;

// Pieces of a word; out-of-vocabulary pieces are replaced by "<unk>".
std::vector<std::string> encode_word(const BpeModel& bpe, std::string_view word);
std::vector<TokenId> encode_word_ids(const BpeModel& bpe, std::string_view word);

// Drops the continuation markers of non-final pieces and concatenates.
std::string strip_markers(std::span<const std::string> pieces);

void write_bpe(std::ostream& out, const BpeModel& bpe);
void save_bpe(const BpeModel& bpe, const std::filesystem::path& path);
BpeModel read_bpe(std::istream& in);
BpeModel load_bpe(const std::filesystem::path& path);

// Subword id with its label: the word's label on the final piece, IGNORE on
// earlier pieces.
struct Piece {
  TokenId id = BpeModel::kPad;
  PunctClass label = PunctClass::kIgnore;

  friend bool operator==(const Piece&, const Piece&) = default;
};

using PieceStream = std::vector<Piece>;

// Unframed piece stream for a document.
PieceStream to_piece_stream(const BpeModel& bpe, const Document& doc);

// One model input window of exactly L positions:
// [BOS, pieces..., EOS, PAD...].
struct SubwordSequence {
  std::vector<TokenId> ids;
  std::vector<PunctClass> labels;
  std::vector<std::uint8_t> mask;  // 1 = attend, 0 = pad
  // Surfaces of the words whose final piece lies in this window (empty for
  // windows built from augmented streams).
  std::vector<std::string> words;
  // Index of the first such word within the source document.
  std::size_t first_word = 0;

  std::size_t length() const { return ids.size(); }
  // Number of positions carrying a corpus label.
  std::size_t num_labeled() const;
};

// Packs a piece stream into windows without splitting a word, where a word
// ends at each non-IGNORE label. A group longer than L-2 pieces (possible
// only after augmentation) is split. Throws ConfigError if L < 3.
std::vector<SubwordSequence> frame_stream(std::span<const Piece> pieces, std::size_t seq_len);

// Encodes and frames a document. Throws DataError naming the word when a
// single word needs more than L-2 pieces.
std::vector<SubwordSequence> encode_document(const BpeModel& bpe, const Document& doc,
                                             std::size_t seq_len);

// Rebuilds a document from per-window predictions (one label per position,
// aligned with the windows from encode_document). Throws DataError on a
// length mismatch.
Document decode_predictions(const BpeModel& bpe, std::span<const SubwordSequence> windows,
                            std::span<const std::vector<PunctClass>> predicted);

}  // namespace bnpunct
