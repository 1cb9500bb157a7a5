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

#include <algorithm>

#include "bnpunct/train.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bnpunct;

namespace {

// A one-coordinate model: the output bias b_out[0] stands in for a scalar θ.
ModelDims tiny_dims() { return make_dims(5, 1); }

TrainConfig small_config() {
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.seq_len = 24;
  cfg.emb_dim = 8;
  cfg.batch_size = 4;
  cfg.init_seed = 1;
  cfg.shuffle_seed = 2;
  return cfg;
}

}  // namespace

TEST_CASE("make_batches") {
  const auto one = make_batches(5, 10, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].size() == 5);

  const auto a = make_batches(23, 4, 7, 3);
  CHECK(a == make_batches(23, 4, 7, 3));
  CHECK(a != make_batches(23, 4, 7, 4));
  REQUIRE(a.size() == 6);
  CHECK(a.back().size() == 3);
  std::vector<std::size_t> all;
  for (const auto& b : a) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
  CHECK(make_batches(0, 4, 1, 1).empty());
}

TEST_CASE("adam step on a scalar") {
  TrainConfig cfg;
  cfg.learning_rate = 0.1;
  auto params = BasicParams<double>::zeros(tiny_dims());
  auto grads = Gradients::zeros(tiny_dims());
  auto moments = AdamMoments::zeros(tiny_dims());
  grads.b_out[0] = 1.0;
  adam_step(params, grads, moments, 1, cfg);
  // m̂ = 1, v̂ = 1: θ' = -0.1 / (1 + 1e-8).
  CHECK(params.b_out[0] == doctest::Approx(-0.0999999990).epsilon(1e-12));
  CHECK(params.b_out[0] == -0.1 / (1.0 + 1e-8));
  for (std::size_t c = 1; c < 5; ++c) CHECK(params.b_out[c] == 0.0);

  // Sign flip moves θ symmetrically.
  auto mirrored = BasicParams<double>::zeros(tiny_dims());
  auto mm = AdamMoments::zeros(tiny_dims());
  grads.b_out[0] = -1.0;
  adam_step(mirrored, grads, mm, 1, cfg);
  CHECK(mirrored.b_out[0] == -params.b_out[0]);

  // Zero gradients with zero moments leave parameters unchanged.
  auto still = init_params(tiny_dims(), 3);
  const auto before = still;
  auto zm = AdamMoments::zeros(tiny_dims());
  adam_step(still, Gradients::zeros(tiny_dims()), zm, 1, cfg);
  CHECK(still == before);

  grads.b_out[0] = std::nan("");
  CHECK_THROWS_AS(adam_step(params, grads, moments, 2, cfg), NumericError);
}

TEST_CASE("gradient clipping") {
  auto g = Gradients::zeros(tiny_dims());
  g.b_out[0] = 3.0;
  g.b_out[1] = 4.0;
  CHECK(clip_grad_norm(g, 10.0) == doctest::Approx(5.0));
  CHECK(g.b_out[0] == 3.0);
  CHECK(clip_grad_norm(g, 1.0) == doctest::Approx(5.0));
  CHECK(g.b_out[0] == doctest::Approx(0.6));
  CHECK(g.b_out[1] == doctest::Approx(0.8));
}

TEST_CASE("one Adam step lowers the loss on a fixed batch") {
  const auto dims = make_dims(20, 6);
  Rng rng(5);
  const auto batch = fixtures::random_batch(rng, 2, 10, 20);
  auto params = init_params(dims, 9);
  TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  auto grads = Gradients::zeros(dims);
  auto moments = AdamMoments::zeros(dims);
  const double before = loss_and_grad(params, batch, grads);
  adam_step(params, grads, moments, 1, cfg);
  CHECK(loss(params, batch) < before);
}

TEST_CASE("training is deterministic and selects the best dev epoch") {
  const auto train_docs = generate_synthetic(1, 600);
  const auto dev_docs = generate_synthetic(2, 200);
  const BpeModel bpe = train_bpe(train_docs, 100);
  auto cfg = small_config();
  cfg.augment = AugmentConfig{0.1, 0.4, 0.4, 5};

  const auto dev_copy = dev_docs;
  const TrainResult a = train(train_docs, dev_docs, bpe, cfg);
  const TrainResult b = train(train_docs, dev_docs, bpe, cfg);
  for (std::size_t i = 0; i < dev_docs.size(); ++i) CHECK(dev_docs[i].tokens == dev_copy[i].tokens);

  CHECK(a.best == b.best);
  REQUIRE(a.history.epochs.size() == 3);
  REQUIRE(a.history.selected);
  const double chosen = selection_metric(a.history.epochs[*a.history.selected].dev);
  for (std::size_t i = 0; i < a.history.epochs.size(); ++i) {
    CHECK(a.history.epochs[i].train_loss == b.history.epochs[i].train_loss);
    const double m = selection_metric(a.history.epochs[i].dev);
    CHECK(m <= chosen);
    if (i < *a.history.selected) CHECK(m < chosen);
  }
}

TEST_CASE("zero epochs returns the initial parameters") {
  const auto train_docs = generate_synthetic(1, 200);
  const BpeModel bpe = train_bpe(train_docs, 50);
  auto cfg = small_config();
  cfg.epochs = 0;
  const TrainResult r = train(train_docs, train_docs, bpe, cfg);
  CHECK(r.history.epochs.empty());
  CHECK(r.best == init_params(make_dims(bpe.vocab_size(), cfg.emb_dim), cfg.init_seed));
}

TEST_CASE("configuration validation") {
  auto cfg = small_config();
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.seq_len = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  const auto docs = generate_synthetic(1, 100);
  const BpeModel bpe = train_bpe(docs, 10);
  CHECK_THROWS_AS(train({}, docs, bpe, small_config()), DataError);
}

TEST_CASE("a diverging run reports instead of poisoning parameters") {
  const auto docs = generate_synthetic(3, 300);
  const BpeModel bpe = train_bpe(docs, 50);
  auto cfg = small_config();
  cfg.learning_rate = 1e300;
  cfg.clip_norm = 0.0;
  const TrainResult r = train(docs, docs, bpe, cfg);
  REQUIRE(r.diverged);
  CHECK_FALSE(r.divergence.empty());
  for (auto g : r.best.groups()) {
    for (float v : g) CHECK(std::isfinite(v));
  }
}
