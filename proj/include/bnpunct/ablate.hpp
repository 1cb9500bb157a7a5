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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bnpunct/config.hpp"
#include "bnpunct/corpus.hpp"
#include "bnpunct/eval.hpp"

namespace bnpunct {

struct AblationData {
  std::vector<Document> train;
  std::vector<Document> dev;
  std::vector<std::pair<std::string, std::vector<Document>>> tests;
};

struct AblationResult {
  std::vector<AblationEntry> entries;
  std::vector<std::string> failures;  // one message per failed cell
};

// Windows of a test split with UNK substitutions at `rate` (labels kept).
std::vector<SubwordSequence> noisy_eval_windows(std::span<const Document> docs, const BpeModel& bpe,
                                                std::size_t seq_len, double rate,
                                                std::uint64_t seed);

// Trains one model per alpha in cfg.alphas with shared seeds and evaluates
// each on every test split (plus a "<name>+noise" row per split when
// cfg.test_noise is set). One BPE model, trained on the training split, is
// shared by all cells. When out_dir is non-empty it receives bpe.txt,
// <variant>/model.ckpt, <variant>/history.tsv, ablation.txt and
// ablation.tsv. A failing cell is reported and skipped.
AblationResult run_ablation(const AblationData& data, const RunConfig& cfg,
                            const std::filesystem::path& out_dir);

// Per-epoch history as TSV (no wall-clock columns).
std::string format_history(const TrainHistory& history);

}  // namespace bnpunct
