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

#include "bnpunct/restore.hpp"

#include <cmath>
#include <limits>

#include "bnpunct/corpus.hpp"

namespace bnpunct {

void RestoreRequest::validate() const {
  if (seq_len < 3) throw ConfigError("window length must be at least 3");
  const std::size_t s = effective_stride();
  if (s < 1 || s > seq_len - 2) throw ConfigError("stride must lie in [1, L - 2]");
}

std::vector<SubwordSequence> sliding_windows(const BpeModel& bpe, std::span<const std::string> words,
                                             std::size_t seq_len, std::size_t stride) {
  RestoreRequest{{}, seq_len, stride}.validate();
  const std::size_t capacity = seq_len - 2;
  if (stride == 0) stride = seq_len / 2;

  std::vector<std::vector<TokenId>> pieces;
  std::vector<std::size_t> offset;  // piece offset of each word
  std::size_t total = 0;
  for (const auto& w : words) {
    pieces.push_back(encode_word_ids(bpe, w));
    if (pieces.back().size() > capacity) {
      throw DataError("word '" + w + "' encodes to " + std::to_string(pieces.back().size()) +
                      " pieces, more than the window capacity of " + std::to_string(capacity));
    }
    offset.push_back(total);
    total += pieces.back().size();
  }

  std::vector<SubwordSequence> windows;
  std::size_t start = 0;
  while (start < words.size()) {
    std::size_t end = start;
    std::size_t used = 0;
    while (end < words.size() && used + pieces[end].size() <= capacity) used += pieces[end++].size();

    SubwordSequence w;
    w.ids.assign(seq_len, BpeModel::kPad);
    w.labels.assign(seq_len, PunctClass::kIgnore);
    w.mask.assign(seq_len, 0);
    w.first_word = start;
    w.ids[0] = BpeModel::kBos;
    w.mask[0] = 1;
    std::size_t pos = 1;
    for (std::size_t i = start; i < end; ++i) {
      for (std::size_t k = 0; k < pieces[i].size(); ++k, ++pos) {
        w.ids[pos] = pieces[i][k];
        w.mask[pos] = 1;
        if (k + 1 == pieces[i].size()) w.labels[pos] = PunctClass::kO;
      }
      w.words.push_back(words[i]);
    }
    w.ids[pos] = BpeModel::kEos;
    w.mask[pos] = 1;
    windows.push_back(std::move(w));
    if (end == words.size()) break;

    std::size_t next = start + 1;
    while (next < end && offset[next] < offset[start] + stride) ++next;
    start = next;
  }
  return windows;
}

std::vector<PunctClass> assign_predictions(std::span<const SubwordSequence> windows,
                                           std::span<const std::vector<PunctClass>> predicted,
                                           std::size_t num_words) {
  if (predicted.size() != windows.size()) throw DataError("one prediction vector per window expected");
  std::vector<PunctClass> out(num_words, PunctClass::kIgnore);
  std::vector<double> best(num_words, std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < windows.size(); ++k) {
    const auto& w = windows[k];
    if (predicted[k].size() != w.length()) throw DataError("prediction length mismatch");
    std::size_t content = 0;
    for (std::size_t t = 1; t < w.length() && w.mask[t] && w.ids[t] != BpeModel::kEos; ++t) ++content;
    const double centre = (static_cast<double>(content) + 1.0) / 2.0;
    std::size_t word = w.first_word;
    for (std::size_t t = 0; t < w.length(); ++t) {
      if (w.labels[t] == PunctClass::kIgnore) continue;
      if (word >= num_words) throw DataError("window refers past the last word");
      const double dist = std::abs(static_cast<double>(t) - centre);
      if (dist < best[word]) {
        best[word] = dist;
        out[word] = predicted[k][t];
      }
      ++word;
    }
  }
  for (PunctClass c : out) {
    if (!is_corpus_class(c)) throw DataError("a word received no prediction");
  }
  return out;
}

std::string restore_text(const BpeModel& bpe, const WindowTagger& tagger,
                         const RestoreRequest& request) {
  request.validate();
  Document doc = parse_labeled(normalize_text(request.text));
  std::vector<std::string> words;
  words.reserve(doc.tokens.size());
  for (const auto& t : doc.tokens) words.push_back(t.surface);
  if (words.empty()) return {};

  const auto windows = sliding_windows(bpe, words, request.seq_len, request.effective_stride());
  const auto predicted = tagger(windows);
  const auto labels = assign_predictions(windows, predicted, words.size());
  for (std::size_t i = 0; i < labels.size(); ++i) doc.tokens[i].label = labels[i];
  return render(doc);
}

std::string restore_text(const BpeModel& bpe, const ModelParams& params,
                         const RestoreRequest& request) {
  return restore_text(
      bpe, [&params](std::span<const SubwordSequence> w) { return predict_windows(params, w); },
      request);
}

}  // namespace bnpunct
