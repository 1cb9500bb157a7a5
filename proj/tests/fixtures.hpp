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

// Random inputs shared by the unit tests and the acceptance harness.
#pragma once

#include <string>
#include <vector>

#include "bnpunct/corpus.hpp"
#include "bnpunct/net.hpp"
#include "bnpunct/rng.hpp"
#include "bnpunct/subword.hpp"

namespace fixtures {

inline const std::vector<std::string>& alphabet() {
  static const std::vector<std::string> a = {"আ", "মি", "ভা", "লো", "ক", "ছি", "ন",
                                             "a", "b",  "x",  "1",  "é", "ড়", "z"};
  return a;
}

inline std::string random_word(bnpunct::Rng& rng, std::size_t max_chars = 5) {
  const auto& a = alphabet();
  const std::size_t n = 1 + bnpunct::uniform_below(rng, max_chars);
  std::string w;
  for (std::size_t i = 0; i < n; ++i) w += a[bnpunct::uniform_below(rng, a.size())];
  return w;
}

inline bnpunct::Document random_document(bnpunct::Rng& rng, std::size_t max_tokens = 20) {
  bnpunct::Document d;
  d.id = std::to_string(rng() % 100000);
  const std::size_t n = bnpunct::uniform_below(rng, max_tokens + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = bnpunct::class_from_index(bnpunct::uniform_below(rng, bnpunct::kNumClasses));
    d.tokens.push_back({random_word(rng), label});
  }
  return d;
}

// B sequences of length T over a vocabulary of `vocab` ids with a mix of
// labeled, IGNORE and (in the second sequence) trailing pad positions.
inline std::vector<bnpunct::SubwordSequence> random_batch(bnpunct::Rng& rng, std::size_t batch,
                                                          std::size_t len, std::size_t vocab) {
  using bnpunct::BpeModel;
  using bnpunct::PunctClass;
  std::vector<bnpunct::SubwordSequence> out;
  for (std::size_t b = 0; b < batch; ++b) {
    bnpunct::SubwordSequence s;
    const std::size_t pad_from = b % 2 == 1 ? len - len / 4 : len;
    for (std::size_t t = 0; t < len; ++t) {
      if (t >= pad_from) {
        s.ids.push_back(BpeModel::kPad);
        s.labels.push_back(PunctClass::kIgnore);
        s.mask.push_back(0);
        continue;
      }
      s.ids.push_back(static_cast<bnpunct::TokenId>(
          BpeModel::kNumSpecials + bnpunct::uniform_below(rng, vocab - BpeModel::kNumSpecials)));
      s.mask.push_back(1);
      if (t == 0 || bnpunct::uniform01(rng) < 0.25) {
        s.labels.push_back(PunctClass::kIgnore);
      } else {
        s.labels.push_back(bnpunct::class_from_index(bnpunct::uniform_below(rng, bnpunct::kNumClasses)));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Parameters drawn from U(-scale, scale) in double precision.
inline bnpunct::BasicParams<double> random_params(const bnpunct::ModelDims& dims, std::uint64_t seed,
                                                  double scale) {
  auto p = bnpunct::BasicParams<double>::zeros(dims);
  bnpunct::Rng rng(seed);
  for (auto g : p.groups()) {
    for (auto& v : g) v = bnpunct::uniform_real(rng, -scale, scale);
  }
  return p;
}

}  // namespace fixtures
