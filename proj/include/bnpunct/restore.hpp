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

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnpunct/net.hpp"
#include "bnpunct/subword.hpp"

namespace bnpunct {

struct RestoreRequest {
  std::string text;
  std::size_t seq_len = 256;  // L
  std::size_t stride = 0;     // S in pieces; 0 means L / 2

  std::size_t effective_stride() const { return stride == 0 ? seq_len / 2 : stride; }
  // Throws ConfigError unless L >= 3 and 1 <= S <= L - 2.
  void validate() const;
};

// Per-position class predictions for a set of windows, as returned by
// predict_windows.
using WindowTagger =
    std::function<std::vector<std::vector<PunctClass>>(std::span<const SubwordSequence>)>;

// Overlapping word-aligned windows over `words`. Each window holds whole
// words only, at most L-2 pieces; consecutive windows start roughly S pieces
// apart. Final pieces carry a placeholder O label. Throws DataError if a word
// alone exceeds L-2 pieces.
std::vector<SubwordSequence> sliding_windows(const BpeModel& bpe, std::span<const std::string> words,
                                             std::size_t seq_len, std::size_t stride);

// Picks, for every word, the prediction from the window in which the word's
// final piece sits closest to the window's centre; ties go to the earlier
// window.
std::vector<PunctClass> assign_predictions(std::span<const SubwordSequence> windows,
                                           std::span<const std::vector<PunctClass>> predicted,
                                           std::size_t num_words);

// Normalizes the text, drops any existing marks, predicts one label per word
// and renders the punctuated text.
std::string restore_text(const BpeModel& bpe, const WindowTagger& tagger,
                         const RestoreRequest& request);
std::string restore_text(const BpeModel& bpe, const ModelParams& params,
                         const RestoreRequest& request);

}  // namespace bnpunct
