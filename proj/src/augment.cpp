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

#include "bnpunct/augment.hpp"

#include <cmath>
#include <string>

namespace bnpunct {
namespace {

void check_probability(double p, const char* name) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw ConfigError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

void AugmentConfig::validate() const {
  check_probability(alpha, "alpha");
  check_probability(sub_prob, "sub_prob");
  check_probability(del_prob, "del_prob");
  if (sub_prob + del_prob > 1.0 + 1e-12) {
    throw ConfigError("sub_prob + del_prob must not exceed 1");
  }
}

AugmentTally& AugmentTally::operator+=(const AugmentTally& o) {
  kept += o.kept;
  substituted += o.substituted;
  deleted += o.deleted;
  inserted += o.inserted;
  return *this;
}

PieceStream augment_stream(std::span<const Piece> pieces, const AugmentConfig& cfg, Rng& rng,
                           AugmentTally* tally) {
  cfg.validate();
  AugmentTally local;
  PieceStream out;
  out.reserve(pieces.size() + pieces.size() / 8);
  for (const Piece& p : pieces) {
    if (uniform01(rng) >= cfg.alpha) {
      out.push_back(p);
      ++local.kept;
      continue;
    }
    const double v = uniform01(rng);
    if (v < cfg.sub_prob) {
      out.push_back({BpeModel::kUnk, p.label});
      ++local.substituted;
    } else if (v < cfg.sub_prob + cfg.del_prob) {
      ++local.deleted;
    } else {
      out.push_back({BpeModel::kUnk, PunctClass::kO});
      out.push_back(p);
      ++local.inserted;
    }
  }
  if (tally) *tally += local;
  return out;
}

std::vector<PieceStream> augment_dataset(std::span<const PieceStream> streams,
                                         const AugmentConfig& cfg, AugmentTally* tally) {
  cfg.validate();
  std::vector<PieceStream> out;
  out.reserve(streams.size());
  for (std::size_t i = 0; i < streams.size(); ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    out.push_back(augment_stream(streams[i], cfg, rng, tally));
  }
  return out;
}

}  // namespace bnpunct
