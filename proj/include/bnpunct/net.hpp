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
#include <span>
#include <string_view>
#include <vector>

#include "bnpunct/punct.hpp"
#include "bnpunct/subword.hpp"

namespace bnpunct {

struct ModelDims {
  std::size_t vocab = 0;
  std::size_t emb = 0;     // d
  std::size_t hidden = 0;  // h, equal to d unless overridden

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

// One LSTM direction. Gate blocks inside the 4h rows are ordered input,
// forget, cell candidate, output.
template <class T>
struct LstmWeights {
  std::vector<T> w_ih;  // 4h x d
  std::vector<T> w_hh;  // 4h x h
  std::vector<T> bias;  // 4h

  friend bool operator==(const LstmWeights&, const LstmWeights&) = default;
};

inline constexpr std::size_t kNumParamGroups = 9;

// Embedding -> BiLSTM -> 5-way linear classifier. Instantiated with float
// for stored models and with double for gradients and gradient checks.
template <class T>
struct BasicParams {
  ModelDims dims;
  std::vector<T> embedding;  // |V| x d
  LstmWeights<T> fwd;
  LstmWeights<T> bwd;
  std::vector<T> w_out;  // 5 x 2h, columns [h_fwd; h_bwd]
  std::vector<T> b_out;  // 5

  static BasicParams zeros(const ModelDims& dims);

  // Groups in serialization order: embedding, fwd.w_ih, fwd.w_hh, fwd.bias,
  // bwd.w_ih, bwd.w_hh, bwd.bias, out.weight, out.bias.
  std::array<std::span<T>, kNumParamGroups> groups();
  std::array<std::span<const T>, kNumParamGroups> groups() const;
  static constexpr std::array<std::string_view, kNumParamGroups> kGroupNames = {
      "embedding", "fwd.w_ih", "fwd.w_hh", "fwd.bias", "bwd.w_ih",
      "bwd.w_hh",  "bwd.bias", "out.weight", "out.bias"};

  std::size_t num_values() const;

  template <class U>
  BasicParams<U> cast() const {
    BasicParams<U> out = BasicParams<U>::zeros(dims);
    auto dst = out.groups();
    auto src = groups();
    for (std::size_t g = 0; g < kNumParamGroups; ++g) {
      for (std::size_t i = 0; i < src[g].size(); ++i) dst[g][i] = static_cast<U>(src[g][i]);
    }
    return out;
  }

  friend bool operator==(const BasicParams&, const BasicParams&) = default;
};

using ModelParams = BasicParams<float>;
using Gradients = BasicParams<double>;

// Shapes for a vocabulary size and embedding width; hidden defaults to emb.
ModelDims make_dims(std::size_t vocab, std::size_t emb, std::size_t hidden = 0);

// Weights ~ U(-0.1, 0.1) from a seeded generator; forget-gate biases 1.0.
// Throws ConfigError on a zero dimension.
ModelParams init_params(const ModelDims& dims, std::uint64_t seed);

using ClassScores = std::array<double, kNumClasses>;
using SequenceLogits = std::vector<ClassScores>;

// Logits for every position of every sequence. Pad positions carry the LSTM
// state through unchanged; their logits are computed but meaningless.
// Throws DataError on an out-of-range id or ragged sequence.
template <class T>
std::vector<SequenceLogits> forward(const BasicParams<T>& params,
                                    std::span<const SubwordSequence> batch);

// Mean softmax cross-entropy over positions whose label is a corpus class.
// Throws DataError if the batch has no such position.
template <class T>
double loss(const BasicParams<T>& params, std::span<const SubwordSequence> batch);

// Loss plus exact gradients by backpropagation through time. `grads` is
// resized and overwritten.
template <class T>
double loss_and_grad(const BasicParams<T>& params, std::span<const SubwordSequence> batch,
                     Gradients& grads);

// Lowest class index wins ties.
PunctClass argmax_class(const ClassScores& scores);

// Per-position predictions: a class at labeled positions, IGNORE elsewhere.
std::vector<std::vector<PunctClass>> predict_windows(const ModelParams& params,
                                                     std::span<const SubwordSequence> windows);

// One prediction per word, in window order.
std::vector<PunctClass> predict(const ModelParams& params,
                                std::span<const SubwordSequence> windows);

}  // namespace bnpunct
