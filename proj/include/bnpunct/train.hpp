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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnpunct/augment.hpp"
#include "bnpunct/corpus.hpp"
#include "bnpunct/eval.hpp"
#include "bnpunct/net.hpp"
#include "bnpunct/subword.hpp"

namespace bnpunct {

struct TrainConfig {
  // The from-scratch default; 5e-6 and 1e-5 suit pretrained encoders.
  double learning_rate = 1e-3;
  std::size_t batch_size = 8;
  std::size_t epochs = 10;
  std::size_t seq_len = 256;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 5.0;  // global gradient norm; 0 disables clipping
  std::uint64_t shuffle_seed = 0;
  std::uint64_t init_seed = 0;
  std::size_t emb_dim = 128;
  std::size_t hidden_dim = 0;  // 0 = same as emb_dim
  std::optional<AugmentConfig> augment;  // training split only

  // Throws ConfigError.
  void validate() const;
};

// Index batches for one epoch: a permutation of [0, n) fixed by
// (shuffle_seed, epoch), cut into batch_size chunks; the last may be short.
std::vector<std::vector<std::size_t>> make_batches(std::size_t n, std::size_t batch_size,
                                                   std::uint64_t shuffle_seed, std::size_t epoch);

// First and second moment estimates for Adam.
struct AdamMoments {
  Gradients m;
  Gradients v;

  static AdamMoments zeros(const ModelDims& dims);
};

// One bias-corrected Adam update at step t >= 1. Throws NumericError before
// touching anything if a gradient is not finite.
template <class T>
void adam_step(BasicParams<T>& params, const Gradients& grads, AdamMoments& moments,
               std::size_t t, const TrainConfig& cfg);

// Rescales grads to at most max_norm (global L2 norm); returns the norm
// before clipping.
double clip_grad_norm(Gradients& grads, double max_norm);

// Scores every labeled position of the windows.
EvalReport evaluate(const ModelParams& params, std::span<const SubwordSequence> windows);

// Dev selection metric: micro F1 over the four punctuation classes.
inline double selection_metric(const EvalReport& r) { return r.micro.f1; }

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;  // mean over batches
  EvalReport dev;
  double wall_seconds = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::optional<std::size_t> selected;  // index into epochs
};

struct TrainResult {
  ModelParams best;
  TrainHistory history;
  bool diverged = false;
  std::string divergence;
};

// Called after every epoch with the current (not necessarily best) params.
// Returning false ends training early.
using EpochHook = std::function<bool(const EpochRecord&, const ModelParams&)>;

// Windows ready for training: the training split, augmented if configured,
// framed to seq_len.
std::vector<SubwordSequence> training_windows(std::span<const Document> docs, const BpeModel& bpe,
                                              const TrainConfig& cfg);
std::vector<SubwordSequence> eval_windows(std::span<const Document> docs, const BpeModel& bpe,
                                          std::size_t seq_len);

// Epoch loop over prepared windows. The best epoch by dev selection metric
// wins; ties keep the earliest. A non-finite loss stops training and returns
// the last selected params with `diverged` set.
TrainResult train_windows(std::span<const SubwordSequence> train, std::span<const SubwordSequence> dev,
                          std::size_t vocab_size, const TrainConfig& cfg,
                          const EpochHook& hook = {});

// Encodes, optionally augments, and trains. Throws DataError on an empty
// split.
TrainResult train(std::span<const Document> train_docs, std::span<const Document> dev_docs,
                  const BpeModel& bpe, const TrainConfig& cfg, const EpochHook& hook = {});

}  // namespace bnpunct
