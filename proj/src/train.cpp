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

#include "bnpunct/train.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "bnpunct/rng.hpp"

namespace bnpunct {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be positive");
  }
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (seq_len < 3) throw ConfigError("seq_len must be at least 3");
  if (emb_dim == 0) throw ConfigError("emb_dim must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0)) {
    throw ConfigError("invalid Adam hyper-parameters");
  }
  if (!(clip_norm >= 0.0)) throw ConfigError("clip_norm must be non-negative");
  if (augment) augment->validate();
}

std::vector<std::vector<std::size_t>> make_batches(std::size_t n, std::size_t batch_size,
                                                   std::uint64_t shuffle_seed, std::size_t epoch) {
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(shuffle_seed, epoch));
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[uniform_below(rng, i)]);
  }
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t b = 0; b < n; b += batch_size) {
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(b),
                         order.begin() + static_cast<std::ptrdiff_t>(std::min(n, b + batch_size)));
  }
  return batches;
}

AdamMoments AdamMoments::zeros(const ModelDims& dims) {
  return AdamMoments{Gradients::zeros(dims), Gradients::zeros(dims)};
}

template <class T>
void adam_step(BasicParams<T>& params, const Gradients& grads, AdamMoments& moments,
               std::size_t t, const TrainConfig& cfg) {
  if (t == 0) throw ConfigError("Adam step counter starts at 1");
  if (!(grads.dims == params.dims) || !(moments.m.dims == params.dims)) {
    throw DataError("Adam: shape mismatch");
  }
  for (const auto& g : grads.groups()) {
    for (double v : g) {
      if (!std::isfinite(v)) throw NumericError("non-finite gradient");
    }
  }
  const double step = static_cast<double>(t);
  const double bias1 = 1.0 - std::pow(cfg.beta1, step);
  const double bias2 = 1.0 - std::pow(cfg.beta2, step);
  auto p = params.groups();
  auto m = moments.m.groups();
  auto v = moments.v.groups();
  const auto g = grads.groups();
  for (std::size_t k = 0; k < kNumParamGroups; ++k) {
    for (std::size_t i = 0; i < p[k].size(); ++i) {
      const double gi = g[k][i];
      m[k][i] = cfg.beta1 * m[k][i] + (1.0 - cfg.beta1) * gi;
      v[k][i] = cfg.beta2 * v[k][i] + (1.0 - cfg.beta2) * gi * gi;
      const double m_hat = m[k][i] / bias1;
      const double v_hat = v[k][i] / bias2;
      p[k][i] = static_cast<T>(static_cast<double>(p[k][i]) -
                               cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon));
    }
  }
}

template void adam_step(BasicParams<float>&, const Gradients&, AdamMoments&, std::size_t,
                        const TrainConfig&);
template void adam_step(BasicParams<double>&, const Gradients&, AdamMoments&, std::size_t,
                        const TrainConfig&);

double clip_grad_norm(Gradients& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& g : grads.groups()) {
    for (double v : g) sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto g : grads.groups()) {
      for (double& v : g) v *= scale;
    }
  }
  return norm;
}

EvalReport evaluate(const ModelParams& params, std::span<const SubwordSequence> windows) {
  const auto predicted = predict_windows(params, windows);
  ConfusionMatrix cm;
  for (std::size_t k = 0; k < windows.size(); ++k) {
    cm += confusion(windows[k].labels, predicted[k]);
  }
  return report(cm);
}

std::vector<SubwordSequence> training_windows(std::span<const Document> docs, const BpeModel& bpe,
                                              const TrainConfig& cfg) {
  if (!cfg.augment || cfg.augment->alpha == 0.0) return eval_windows(docs, bpe, cfg.seq_len);
  std::vector<PieceStream> streams;
  streams.reserve(docs.size());
  for (const auto& d : docs) streams.push_back(to_piece_stream(bpe, d));
  const auto augmented = augment_dataset(streams, *cfg.augment);
  std::vector<SubwordSequence> windows;
  for (const auto& s : augmented) {
    for (auto& w : frame_stream(s, cfg.seq_len)) {
      if (w.num_labeled() > 0) windows.push_back(std::move(w));
    }
  }
  return windows;
}

std::vector<SubwordSequence> eval_windows(std::span<const Document> docs, const BpeModel& bpe,
                                          std::size_t seq_len) {
  std::vector<SubwordSequence> windows;
  for (const auto& d : docs) {
    for (auto& w : encode_document(bpe, d, seq_len)) windows.push_back(std::move(w));
  }
  return windows;
}

TrainResult train_windows(std::span<const SubwordSequence> train,
                          std::span<const SubwordSequence> dev, std::size_t vocab_size,
                          const TrainConfig& cfg, const EpochHook& hook) {
  cfg.validate();
  const ModelDims dims = make_dims(vocab_size, cfg.emb_dim, cfg.hidden_dim);
  ModelParams params = init_params(dims, cfg.init_seed);

  TrainResult result;
  result.best = params;
  if (cfg.epochs == 0) return result;
  if (train.empty()) throw DataError("training split is empty");
  if (dev.empty()) throw DataError("dev split is empty");

  AdamMoments moments = AdamMoments::zeros(dims);
  Gradients grads;
  std::size_t step = 0;
  double best_metric = -std::numeric_limits<double>::infinity();
  std::vector<SubwordSequence> batch;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    double loss_sum = 0.0;
    std::size_t loss_batches = 0;
    for (const auto& indices : make_batches(train.size(), cfg.batch_size, cfg.shuffle_seed, epoch)) {
      batch.clear();
      for (std::size_t i : indices) {
        if (train[i].num_labeled() > 0) batch.push_back(train[i]);
      }
      if (batch.empty()) continue;
      const double batch_loss = loss_and_grad(params, batch, grads);
      if (!std::isfinite(batch_loss)) {
        result.diverged = true;
        result.divergence = "non-finite loss in epoch " + std::to_string(epoch);
        return result;
      }
      clip_grad_norm(grads, cfg.clip_norm);
      try {
        adam_step(params, grads, moments, ++step, cfg);
      } catch (const NumericError& e) {
        result.diverged = true;
        result.divergence = std::string(e.what()) + " in epoch " + std::to_string(epoch);
        return result;
      }
      loss_sum += batch_loss;
      ++loss_batches;
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_batches ? loss_sum / static_cast<double>(loss_batches) : 0.0;
    record.dev = evaluate(params, dev);
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.history.epochs.push_back(record);

    const double metric = selection_metric(record.dev);
    if (metric > best_metric) {
      best_metric = metric;
      result.best = params;
      result.history.selected = result.history.epochs.size() - 1;
    }
    if (hook && !hook(record, params)) break;
  }
  return result;
}

TrainResult train(std::span<const Document> train_docs, std::span<const Document> dev_docs,
                  const BpeModel& bpe, const TrainConfig& cfg, const EpochHook& hook) {
  cfg.validate();
  if (cfg.epochs > 0 && (train_docs.empty() || dev_docs.empty())) {
    throw DataError("train and dev splits must be non-empty");
  }
  const auto train_set = training_windows(train_docs, bpe, cfg);
  const auto dev_set = eval_windows(dev_docs, bpe, cfg.seq_len);
  return train_windows(train_set, dev_set, bpe.vocab_size(), cfg, hook);
}

}  // namespace bnpunct
