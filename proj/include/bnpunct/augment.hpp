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
#include <span>
#include <vector>

#include "bnpunct/rng.hpp"
#include "bnpunct/subword.hpp"

namespace bnpunct {

// ASR-noise simulation parameters. The insertion probability is implied:
// 1 - sub_prob - del_prob.
struct AugmentConfig {
  double alpha = 0.0;  // token change probability
  double sub_prob = 0.4;
  double del_prob = 0.4;
  std::uint64_t seed = 0;

  double ins_prob() const { return 1.0 - sub_prob - del_prob; }
  // Throws ConfigError when a probability is outside [0, 1] or
  // sub_prob + del_prob > 1.
  void validate() const;
};

struct AugmentTally {
  std::size_t kept = 0;
  std::size_t substituted = 0;
  std::size_t deleted = 0;
  std::size_t inserted = 0;

  std::size_t modified() const { return substituted + deleted + inserted; }
  AugmentTally& operator+=(const AugmentTally& o);
};

// One left-to-right pass over an unframed piece stream. Each piece is
// changed with probability alpha; a changed piece is substituted by UNK
// (label kept), deleted (label dropped), or preceded by an inserted (UNK, O).
PieceStream augment_stream(std::span<const Piece> pieces, const AugmentConfig& cfg, Rng& rng,
                           AugmentTally* tally = nullptr);

// Augments each stream with its own RNG substream derived from
// (cfg.seed, stream index).
std::vector<PieceStream> augment_dataset(std::span<const PieceStream> streams,
                                         const AugmentConfig& cfg,
                                         AugmentTally* tally = nullptr);

}  // namespace bnpunct
