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

#include "bnpunct/subword.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "bnpunct/unicode.hpp"

namespace bnpunct {
namespace {

constexpr std::string_view kSpecials[] = {"<pad>", "<unk>", "<s>", "</s>"};

bool has_marker(std::string_view s) {
  return s.size() >= BpeModel::kMarker.size() &&
         s.substr(s.size() - BpeModel::kMarker.size()) == BpeModel::kMarker;
}

}  // namespace

std::string_view BpeModel::special_name(TokenId id) {
  return kSpecials[static_cast<std::size_t>(id)];
}

BpeModel::BpeModel(std::vector<SymbolPair> merges, std::vector<std::string> pieces)
    : merges_(std::move(merges)), pieces_(std::move(pieces)) {
  if (pieces_.size() < kNumSpecials) throw DataError("BPE vocabulary lacks special tokens");
  for (std::size_t i = 0; i < kNumSpecials; ++i) {
    if (pieces_[i] != kSpecials[i]) {
      throw DataError("BPE special token " + std::to_string(i) + " must be " +
                      std::string(kSpecials[i]));
    }
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].empty()) throw DataError("empty BPE piece at id " + std::to_string(i));
    if (!index_.emplace(pieces_[i], static_cast<TokenId>(i)).second) {
      throw DataError("duplicate BPE piece '" + pieces_[i] + "'");
    }
  }
  for (std::size_t r = 0; r < merges_.size(); ++r) {
    if (!has_marker(merges_[r].first)) {
      throw DataError("BPE merge " + std::to_string(r) + " has a word-final left symbol");
    }
    if (!rank_.emplace(merges_[r], r).second) {
      throw DataError("duplicate BPE merge '" + merges_[r].first + " " +
                      merges_[r].second + "'");
    }
  }
}

std::optional<TokenId> BpeModel::find(std::string_view piece) const {
  auto it = index_.find(std::string(piece));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId BpeModel::lookup(std::string_view piece) const {
  return find(piece).value_or(kUnk);
}

std::vector<std::string> BpeModel::segment(std::string_view word) const {
  // Equivalent to applying every merge in training order: each step applies
  // the lowest-ranked merge present that comes after the previous one.
  std::vector<std::string> symbols = initial_symbols(word);
  std::size_t min_rank = 0;
  while (symbols.size() > 1) {
    const SymbolPair* best = nullptr;
    std::size_t best_rank = 0;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = rank_.find(SymbolPair{symbols[i], symbols[i + 1]});
      if (it != rank_.end() && it->second >= min_rank && (best == nullptr || it->second < best_rank)) {
        best = &it->first;
        best_rank = it->second;
      }
    }
    if (best == nullptr) break;
    apply_merge(symbols, *best);
    min_rank = best_rank + 1;
  }
  return symbols;
}

std::uint64_t BpeModel::vocab_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (const auto& p : pieces_) {
    for (unsigned char c : p) mix(c);
    mix(0);
  }
  return h;
}

std::vector<std::string> initial_symbols(std::string_view word) {
  std::vector<std::string> symbols = unicode::code_points(word);
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) symbols[i] += BpeModel::kMarker;
  return symbols;
}

std::string join_symbols(const std::string& left, const std::string& right) {
  return left.substr(0, left.size() - BpeModel::kMarker.size()) + right;
}

void apply_merge(std::vector<std::string>& symbols, const SymbolPair& pair) {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size();) {
    if (i + 1 < symbols.size() && symbols[i] == pair.first && symbols[i + 1] == pair.second) {
      out.push_back(join_symbols(symbols[i], symbols[i + 1]));
      i += 2;
    } else {
      out.push_back(std::move(symbols[i]));
      ++i;
    }
  }
  symbols = std::move(out);
}

BpeModel train_bpe(std::span<const std::string> words, std::size_t num_merges) {
  std::map<std::string, std::int64_t> word_counts;
  for (const auto& w : words) {
    if (!w.empty()) ++word_counts[w];
  }
  if (word_counts.empty()) throw DataError("cannot train BPE on an empty corpus");

  std::vector<std::vector<std::string>> segs;
  std::vector<std::int64_t> freq;
  std::set<std::string> chars;
  for (const auto& [w, n] : word_counts) {
    for (auto& cp : unicode::code_points(w)) chars.insert(std::move(cp));
    segs.push_back(initial_symbols(w));
    freq.push_back(n);
  }

  std::map<SymbolPair, std::int64_t> pair_counts;
  std::map<SymbolPair, std::set<std::size_t>> where;
  auto account = [&](std::size_t wi, std::int64_t sign) {
    const auto& s = segs[wi];
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      SymbolPair p{s[i], s[i + 1]};
      auto it = pair_counts.try_emplace(p, 0).first;
      it->second += sign * freq[wi];
      if (it->second == 0) pair_counts.erase(it);
      if (sign > 0) where[p].insert(wi);
    }
  };
  for (std::size_t wi = 0; wi < segs.size(); ++wi) account(wi, +1);

  std::vector<SymbolPair> merges;
  while (merges.size() < num_merges) {
    // std::map iteration is in ascending pair order, so the first maximum
    // wins ties.
    auto best = pair_counts.end();
    for (auto it = pair_counts.begin(); it != pair_counts.end(); ++it) {
      if (best == pair_counts.end() || it->second > best->second) best = it;
    }
    if (best == pair_counts.end() || best->second < 2) break;

    const SymbolPair pair = best->first;
    merges.push_back(pair);
    const std::set<std::size_t> affected = where[pair];
    for (std::size_t wi : affected) {
      account(wi, -1);
      apply_merge(segs[wi], pair);
      account(wi, +1);
    }
    where.erase(pair);
  }

  std::vector<std::string> pieces(std::begin(kSpecials), std::end(kSpecials));
  std::set<std::string> char_pieces;
  for (const auto& c : chars) {
    char_pieces.insert(c);
    char_pieces.insert(c + std::string(BpeModel::kMarker));
  }
  std::set<std::string> seen(pieces.begin(), pieces.end());
  for (const auto& p : char_pieces) {
    if (seen.insert(p).second) pieces.push_back(p);
  }
  for (const auto& m : merges) {
    std::string joined = join_symbols(m.first, m.second);
    if (seen.insert(joined).second) pieces.push_back(std::move(joined));
  }
  return BpeModel(std::move(merges), std::move(pieces));
}

BpeModel train_bpe(std::span<const Document> docs, std::size_t num_merges) {
  std::vector<std::string> words;
  for (const auto& d : docs) {
    for (const auto& t : d.tokens) words.push_back(t.surface);
  }
  return train_bpe(words, num_merges);
}

std::vector<std::string> encode_word(const BpeModel& bpe, std::string_view word) {
  std::vector<std::string> pieces = bpe.segment(word);
  for (auto& p : pieces) {
    if (!bpe.find(p)) p = std::string(BpeModel::special_name(BpeModel::kUnk));
  }
  return pieces;
}

std::vector<TokenId> encode_word_ids(const BpeModel& bpe, std::string_view word) {
  std::vector<TokenId> ids;
  for (const auto& p : bpe.segment(word)) ids.push_back(bpe.lookup(p));
  return ids;
}

std::string strip_markers(std::span<const std::string> pieces) {
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::string_view p = pieces[i];
    if (i + 1 < pieces.size() && has_marker(p)) p.remove_suffix(BpeModel::kMarker.size());
    out += p;
  }
  return out;
}

void write_bpe(std::ostream& out, const BpeModel& bpe) {
  out << "BPE v1 " << bpe.merges().size() << '\n';
  for (const auto& [a, b] : bpe.merges()) out << a << ' ' << b << '\n';
  out << "VOCAB\n";
  for (std::size_t i = 0; i < bpe.vocab_size(); ++i) {
    out << bpe.piece(static_cast<TokenId>(i)) << '\t' << i << '\n';
  }
}

void save_bpe(const BpeModel& bpe, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  write_bpe(out, bpe);
  if (!out) throw DataError("write failed: " + path.string());
}

BpeModel read_bpe(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  auto fail = [&](const std::string& what) {
    return DataError("BPE file line " + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) throw fail("missing header");
  std::istringstream header(line);
  std::string magic, version;
  std::size_t count = 0;
  if (!(header >> magic >> version >> count) || magic != "BPE" || version != "v1") {
    throw fail("expected 'BPE v1 <num_merges>'");
  }
  std::vector<SymbolPair> merges;
  for (std::size_t r = 0; r < count; ++r) {
    ++line_no;
    if (!std::getline(in, line)) throw fail("truncated merge list");
    const auto sp = line.find(' ');
    if (sp == std::string::npos || sp == 0 || sp + 1 == line.size() ||
        line.find(' ', sp + 1) != std::string::npos) {
      throw fail("expected two space-separated symbols");
    }
    merges.emplace_back(line.substr(0, sp), line.substr(sp + 1));
  }
  ++line_no;
  if (!std::getline(in, line) || line != "VOCAB") throw fail("expected VOCAB marker");
  std::vector<std::string> pieces;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) throw fail("expected piece<TAB>id");
    std::size_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoul(line.substr(tab + 1), &used);
      if (used != line.size() - tab - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw fail("bad id");
    }
    if (id != pieces.size()) throw fail("ids must be dense and ascending");
    pieces.push_back(line.substr(0, tab));
  }
  return BpeModel(std::move(merges), std::move(pieces));
}

BpeModel load_bpe(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open BPE model: " + path.string());
  try {
    return read_bpe(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

PieceStream to_piece_stream(const BpeModel& bpe, const Document& doc) {
  PieceStream out;
  for (const auto& tok : doc.tokens) {
    const auto ids = encode_word_ids(bpe, tok.surface);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out.push_back({ids[i], i + 1 == ids.size() ? tok.label : PunctClass::kIgnore});
    }
  }
  return out;
}

std::size_t SubwordSequence::num_labeled() const {
  return static_cast<std::size_t>(std::count_if(
      labels.begin(), labels.end(), [](PunctClass c) { return c != PunctClass::kIgnore; }));
}

std::vector<SubwordSequence> frame_stream(std::span<const Piece> pieces, std::size_t seq_len) {
  if (seq_len < 3) throw ConfigError("sequence length must be at least 3");
  const std::size_t capacity = seq_len - 2;

  // Word groups as [begin, end) ranges, each at most `capacity` long.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i + 1 - begin == capacity || pieces[i].label != PunctClass::kIgnore) {
      groups.emplace_back(begin, i + 1);
      begin = i + 1;
    }
  }
  if (begin < pieces.size()) groups.emplace_back(begin, pieces.size());

  std::vector<SubwordSequence> windows;
  std::size_t words_before = 0;
  auto emit = [&](std::size_t from, std::size_t to) {
    SubwordSequence w;
    w.ids.assign(seq_len, BpeModel::kPad);
    w.labels.assign(seq_len, PunctClass::kIgnore);
    w.mask.assign(seq_len, 0);
    w.first_word = words_before;
    w.ids[0] = BpeModel::kBos;
    w.mask[0] = 1;
    std::size_t pos = 1;
    for (std::size_t i = from; i < to; ++i, ++pos) {
      w.ids[pos] = pieces[i].id;
      w.labels[pos] = pieces[i].label;
      w.mask[pos] = 1;
      if (pieces[i].label != PunctClass::kIgnore) ++words_before;
    }
    w.ids[pos] = BpeModel::kEos;
    w.mask[pos] = 1;
    windows.push_back(std::move(w));
  };

  std::size_t window_begin = 0;
  std::size_t window_end = 0;
  for (const auto& [gb, ge] : groups) {
    if (ge - window_begin > capacity) {
      emit(window_begin, window_end);
      window_begin = gb;
    }
    window_end = ge;
  }
  if (window_end > window_begin) emit(window_begin, window_end);
  return windows;
}

std::vector<SubwordSequence> encode_document(const BpeModel& bpe, const Document& doc,
                                             std::size_t seq_len) {
  if (seq_len < 3) throw ConfigError("sequence length must be at least 3");
  PieceStream stream;
  for (const auto& tok : doc.tokens) {
    const auto ids = encode_word_ids(bpe, tok.surface);
    if (ids.size() > seq_len - 2) {
      throw DataError("word '" + tok.surface + "' encodes to " + std::to_string(ids.size()) +
                      " pieces, more than the window capacity of " +
                      std::to_string(seq_len - 2));
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      stream.push_back({ids[i], i + 1 == ids.size() ? tok.label : PunctClass::kIgnore});
    }
  }
  auto windows = frame_stream(stream, seq_len);
  for (auto& w : windows) {
    const std::size_t n = w.num_labeled();
    for (std::size_t k = 0; k < n; ++k) w.words.push_back(doc.tokens[w.first_word + k].surface);
  }
  return windows;
}

Document decode_predictions(const BpeModel& bpe, std::span<const SubwordSequence> windows,
                            std::span<const std::vector<PunctClass>> predicted) {
  if (predicted.size() != windows.size()) {
    throw DataError("got predictions for " + std::to_string(predicted.size()) +
                    " windows, expected " + std::to_string(windows.size()));
  }
  Document doc;
  for (std::size_t k = 0; k < windows.size(); ++k) {
    const auto& w = windows[k];
    if (predicted[k].size() != w.length()) {
      throw DataError("window " + std::to_string(k) + ": prediction length " +
                      std::to_string(predicted[k].size()) + " != " +
                      std::to_string(w.length()));
    }
    std::vector<std::string> pending;  // pieces of the current word
    std::size_t word = 0;
    for (std::size_t t = 0; t < w.length(); ++t) {
      if (!w.mask[t] || w.ids[t] == BpeModel::kBos || w.ids[t] == BpeModel::kEos) continue;
      pending.push_back(bpe.piece(w.ids[t]));
      if (w.labels[t] == PunctClass::kIgnore) continue;
      const PunctClass label = predicted[k][t];
      if (!is_corpus_class(label)) {
        throw DataError("window " + std::to_string(k) + ": no class predicted at position " +
                        std::to_string(t));
      }
      std::string surface = word < w.words.size() ? w.words[word] : strip_markers(pending);
      doc.tokens.push_back({std::move(surface), label});
      pending.clear();
      ++word;
    }
  }
  return doc;
}

}  // namespace bnpunct
