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

#include "bnpunct/net.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bnpunct/kernels.hpp"
#include "bnpunct/rng.hpp"

namespace bnpunct {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Activations of one direction over one sequence, indexed by position.
struct DirectionCache {
  std::vector<double> gates;  // T x 4h, post-activation (i, f, g, o)
  std::vector<double> cell;   // T x h
  std::vector<double> hidden; // T x h
};

struct SequenceCache {
  DirectionCache fwd;
  DirectionCache bwd;
  SequenceLogits logits;
};

void check_sequence(const SubwordSequence& seq, std::size_t vocab) {
  const std::size_t n = seq.ids.size();
  if (seq.labels.size() != n || seq.mask.size() != n) {
    throw DataError("sequence ids, labels and mask differ in length");
  }
  for (TokenId id : seq.ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab) {
      throw DataError("token id " + std::to_string(id) + " outside vocabulary of size " +
                      std::to_string(vocab));
    }
  }
}

bool counted(const SubwordSequence& seq, std::size_t t) {
  return seq.mask[t] != 0 && is_corpus_class(seq.labels[t]);
}

// Positions in processing order for a direction.
template <class F>
void for_each_step(std::size_t n, bool reverse, F&& f) {
  if (reverse) {
    for (std::size_t k = n; k-- > 0;) f(k, k + 1 < n ? static_cast<std::ptrdiff_t>(k + 1) : -1);
  } else {
    for (std::size_t k = 0; k < n; ++k) f(k, static_cast<std::ptrdiff_t>(k) - 1);
  }
}

template <class T>
void run_direction(const BasicParams<T>& p, const LstmWeights<T>& w, const SubwordSequence& seq,
                   bool reverse, DirectionCache& cache) {
  const std::size_t n = seq.ids.size();
  const std::size_t d = p.dims.emb;
  const std::size_t h = p.dims.hidden;
  cache.gates.assign(n * 4 * h, 0.0);
  cache.cell.assign(n * h, 0.0);
  cache.hidden.assign(n * h, 0.0);
  const std::vector<double> zeros(h, 0.0);
  std::vector<double> x(d);
  std::vector<double> a(4 * h);

  for_each_step(n, reverse, [&](std::size_t t, std::ptrdiff_t prev) {
    const double* h_prev = prev < 0 ? zeros.data() : &cache.hidden[static_cast<std::size_t>(prev) * h];
    const double* c_prev = prev < 0 ? zeros.data() : &cache.cell[static_cast<std::size_t>(prev) * h];
    double* h_t = &cache.hidden[t * h];
    double* c_t = &cache.cell[t * h];
    if (!seq.mask[t]) {
      std::copy(h_prev, h_prev + h, h_t);
      std::copy(c_prev, c_prev + h, c_t);
      return;
    }
    const T* emb = &p.embedding[static_cast<std::size_t>(seq.ids[t]) * d];
    for (std::size_t j = 0; j < d; ++j) x[j] = static_cast<double>(emb[j]);
    for (std::size_t j = 0; j < 4 * h; ++j) a[j] = static_cast<double>(w.bias[j]);
    kernels::gemv(w.w_ih.data(), 4 * h, d, x.data(), a.data());
    kernels::gemv(w.w_hh.data(), 4 * h, h, h_prev, a.data());

    double* g = &cache.gates[t * 4 * h];
    for (std::size_t j = 0; j < h; ++j) {
      const double in = sigmoid(a[j]);
      const double forget = sigmoid(a[h + j]);
      const double cand = std::tanh(a[2 * h + j]);
      const double out = sigmoid(a[3 * h + j]);
      g[j] = in;
      g[h + j] = forget;
      g[2 * h + j] = cand;
      g[3 * h + j] = out;
      c_t[j] = forget * c_prev[j] + in * cand;
      h_t[j] = out * std::tanh(c_t[j]);
    }
  });
}

template <class T>
void forward_sequence(const BasicParams<T>& p, const SubwordSequence& seq, SequenceCache& cache) {
  check_sequence(seq, p.dims.vocab);
  run_direction(p, p.fwd, seq, false, cache.fwd);
  run_direction(p, p.bwd, seq, true, cache.bwd);

  const std::size_t n = seq.ids.size();
  const std::size_t h = p.dims.hidden;
  cache.logits.assign(n, ClassScores{});
  std::vector<double> cat(2 * h);
  for (std::size_t t = 0; t < n; ++t) {
    std::copy_n(&cache.fwd.hidden[t * h], h, cat.begin());
    std::copy_n(&cache.bwd.hidden[t * h], h, cat.begin() + static_cast<std::ptrdiff_t>(h));
    ClassScores& z = cache.logits[t];
    for (std::size_t k = 0; k < kNumClasses; ++k) z[k] = static_cast<double>(p.b_out[k]);
    kernels::gemv(p.w_out.data(), kNumClasses, 2 * h, cat.data(), z.data());
  }
}

// Log-sum-exp of one position's logits.
double log_partition(const ClassScores& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double v : z) s += std::exp(v - m);
  return m + std::log(s);
}

std::size_t count_positions(std::span<const SubwordSequence> batch) {
  std::size_t n = 0;
  for (const auto& seq : batch) {
    for (std::size_t t = 0; t < seq.ids.size() && t < seq.labels.size() && t < seq.mask.size(); ++t) {
      if (counted(seq, t)) ++n;
    }
  }
  if (n == 0) throw DataError("batch has no labeled positions");
  return n;
}

template <class T>
void backward_direction(const BasicParams<T>& p, const LstmWeights<T>& w,
                        LstmWeights<double>& gw, std::vector<double>& g_emb,
                        const SubwordSequence& seq, bool reverse, const DirectionCache& cache,
                        const std::vector<double>& dh_out) {
  const std::size_t n = seq.ids.size();
  const std::size_t d = p.dims.emb;
  const std::size_t h = p.dims.hidden;
  const std::vector<double> zeros(h, 0.0);
  std::vector<double> dh(h, 0.0);
  std::vector<double> dc(h, 0.0);
  std::vector<double> da(4 * h);
  std::vector<double> x(d);
  std::vector<double> dx(d);
  std::vector<double> dh_prev(h);

  // Reverse of the forward processing order.
  std::vector<std::pair<std::size_t, std::ptrdiff_t>> order;
  order.reserve(n);
  for_each_step(n, reverse, [&](std::size_t t, std::ptrdiff_t prev) { order.emplace_back(t, prev); });

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto [t, prev] = *it;
    for (std::size_t j = 0; j < h; ++j) dh[j] += dh_out[t * h + j];
    if (!seq.mask[t]) continue;  // state was copied; gradients pass straight through

    const double* h_prev = prev < 0 ? zeros.data() : &cache.hidden[static_cast<std::size_t>(prev) * h];
    const double* c_prev = prev < 0 ? zeros.data() : &cache.cell[static_cast<std::size_t>(prev) * h];
    const double* g = &cache.gates[t * 4 * h];
    const double* c_t = &cache.cell[t * h];
    for (std::size_t j = 0; j < h; ++j) {
      const double in = g[j], forget = g[h + j], cand = g[2 * h + j], out = g[3 * h + j];
      const double tc = std::tanh(c_t[j]);
      const double dc_j = dc[j] + dh[j] * out * (1.0 - tc * tc);
      da[j] = dc_j * cand * in * (1.0 - in);
      da[h + j] = dc_j * c_prev[j] * forget * (1.0 - forget);
      da[2 * h + j] = dc_j * in * (1.0 - cand * cand);
      da[3 * h + j] = dh[j] * tc * out * (1.0 - out);
      dc[j] = dc_j * forget;
    }

    const T* emb = &p.embedding[static_cast<std::size_t>(seq.ids[t]) * d];
    for (std::size_t j = 0; j < d; ++j) x[j] = static_cast<double>(emb[j]);
    kernels::ger(gw.w_ih.data(), 4 * h, d, da.data(), x.data());
    kernels::ger(gw.w_hh.data(), 4 * h, h, da.data(), h_prev);
    kernels::axpy(4 * h, 1.0, da.data(), gw.bias.data());

    std::fill(dx.begin(), dx.end(), 0.0);
    kernels::gemv_t(w.w_ih.data(), 4 * h, d, da.data(), dx.data());
    kernels::axpy(d, 1.0, dx.data(), &g_emb[static_cast<std::size_t>(seq.ids[t]) * d]);

    std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
    kernels::gemv_t(w.w_hh.data(), 4 * h, h, da.data(), dh_prev.data());
    dh.swap(dh_prev);
  }
}

}  // namespace

template <class T>
BasicParams<T> BasicParams<T>::zeros(const ModelDims& dims) {
  BasicParams p;
  p.dims = dims;
  const std::size_t d = dims.emb, h = dims.hidden;
  p.embedding.assign(dims.vocab * d, T{0});
  for (LstmWeights<T>* w : {&p.fwd, &p.bwd}) {
    w->w_ih.assign(4 * h * d, T{0});
    w->w_hh.assign(4 * h * h, T{0});
    w->bias.assign(4 * h, T{0});
  }
  p.w_out.assign(kNumClasses * 2 * h, T{0});
  p.b_out.assign(kNumClasses, T{0});
  return p;
}

template <class T>
std::array<std::span<T>, kNumParamGroups> BasicParams<T>::groups() {
  return {std::span<T>(embedding), std::span<T>(fwd.w_ih), std::span<T>(fwd.w_hh),
          std::span<T>(fwd.bias),  std::span<T>(bwd.w_ih), std::span<T>(bwd.w_hh),
          std::span<T>(bwd.bias),  std::span<T>(w_out),    std::span<T>(b_out)};
}

template <class T>
std::array<std::span<const T>, kNumParamGroups> BasicParams<T>::groups() const {
  return {std::span<const T>(embedding), std::span<const T>(fwd.w_ih),
          std::span<const T>(fwd.w_hh),  std::span<const T>(fwd.bias),
          std::span<const T>(bwd.w_ih),  std::span<const T>(bwd.w_hh),
          std::span<const T>(bwd.bias),  std::span<const T>(w_out),
          std::span<const T>(b_out)};
}

template <class T>
std::size_t BasicParams<T>::num_values() const {
  std::size_t n = 0;
  for (const auto& g : groups()) n += g.size();
  return n;
}

template struct BasicParams<float>;
template struct BasicParams<double>;

ModelDims make_dims(std::size_t vocab, std::size_t emb, std::size_t hidden) {
  return ModelDims{vocab, emb, hidden == 0 ? emb : hidden};
}

ModelParams init_params(const ModelDims& dims, std::uint64_t seed) {
  if (dims.vocab == 0 || dims.emb == 0 || dims.hidden == 0) {
    throw ConfigError("model dimensions must be positive");
  }
  ModelParams p = ModelParams::zeros(dims);
  Rng rng(seed);
  for (auto group : p.groups()) {
    for (float& v : group) {
      do {
        v = static_cast<float>(uniform_real(rng, -0.1, 0.1));
      } while (!(std::abs(static_cast<double>(v)) < 0.1));
    }
  }
  const std::size_t h = dims.hidden;
  for (LstmWeights<float>* w : {&p.fwd, &p.bwd}) {
    std::fill(w->bias.begin() + static_cast<std::ptrdiff_t>(h),
              w->bias.begin() + static_cast<std::ptrdiff_t>(2 * h), 1.0f);
  }
  return p;
}

template <class T>
std::vector<SequenceLogits> forward(const BasicParams<T>& params,
                                    std::span<const SubwordSequence> batch) {
  std::vector<SequenceLogits> out;
  out.reserve(batch.size());
  SequenceCache cache;
  for (const auto& seq : batch) {
    forward_sequence(params, seq, cache);
    out.push_back(std::move(cache.logits));
  }
  return out;
}

template <class T>
double loss(const BasicParams<T>& params, std::span<const SubwordSequence> batch) {
  const std::size_t n = count_positions(batch);
  double total = 0.0;
  SequenceCache cache;
  for (const auto& seq : batch) {
    forward_sequence(params, seq, cache);
    for (std::size_t t = 0; t < seq.ids.size(); ++t) {
      if (!counted(seq, t)) continue;
      const ClassScores& z = cache.logits[t];
      total += log_partition(z) - z[class_index(seq.labels[t])];
    }
  }
  return total / static_cast<double>(n);
}

template <class T>
double loss_and_grad(const BasicParams<T>& params, std::span<const SubwordSequence> batch,
                     Gradients& grads) {
  const std::size_t n = count_positions(batch);
  const double scale = 1.0 / static_cast<double>(n);
  grads = Gradients::zeros(params.dims);
  const std::size_t h = params.dims.hidden;

  double total = 0.0;
  SequenceCache cache;
  std::vector<double> dh_fwd, dh_bwd;
  std::vector<double> cat(2 * h), dcat(2 * h);
  for (const auto& seq : batch) {
    forward_sequence(params, seq, cache);
    const std::size_t len = seq.ids.size();
    dh_fwd.assign(len * h, 0.0);
    dh_bwd.assign(len * h, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
      if (!counted(seq, t)) continue;
      const ClassScores& z = cache.logits[t];
      const double lse = log_partition(z);
      const std::size_t y = class_index(seq.labels[t]);
      total += lse - z[y];

      ClassScores dz;
      for (std::size_t k = 0; k < kNumClasses; ++k) {
        dz[k] = (std::exp(z[k] - lse) - (k == y ? 1.0 : 0.0)) * scale;
      }
      std::copy_n(&cache.fwd.hidden[t * h], h, cat.begin());
      std::copy_n(&cache.bwd.hidden[t * h], h, cat.begin() + static_cast<std::ptrdiff_t>(h));
      kernels::ger(grads.w_out.data(), kNumClasses, 2 * h, dz.data(), cat.data());
      kernels::axpy(kNumClasses, 1.0, dz.data(), grads.b_out.data());
      std::fill(dcat.begin(), dcat.end(), 0.0);
      kernels::gemv_t(params.w_out.data(), kNumClasses, 2 * h, dz.data(), dcat.data());
      std::copy_n(dcat.begin(), h, &dh_fwd[t * h]);
      std::copy_n(dcat.begin() + static_cast<std::ptrdiff_t>(h), h, &dh_bwd[t * h]);
    }
    backward_direction(params, params.fwd, grads.fwd, grads.embedding, seq, false, cache.fwd,
                       dh_fwd);
    backward_direction(params, params.bwd, grads.bwd, grads.embedding, seq, true, cache.bwd,
                       dh_bwd);
  }
  return total * scale;
}

template std::vector<SequenceLogits> forward(const BasicParams<float>&,
                                             std::span<const SubwordSequence>);
template std::vector<SequenceLogits> forward(const BasicParams<double>&,
                                             std::span<const SubwordSequence>);
template double loss(const BasicParams<float>&, std::span<const SubwordSequence>);
template double loss(const BasicParams<double>&, std::span<const SubwordSequence>);
template double loss_and_grad(const BasicParams<float>&, std::span<const SubwordSequence>,
                              Gradients&);
template double loss_and_grad(const BasicParams<double>&, std::span<const SubwordSequence>,
                              Gradients&);

PunctClass argmax_class(const ClassScores& scores) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumClasses; ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return class_from_index(best);
}

std::vector<std::vector<PunctClass>> predict_windows(const ModelParams& params,
                                                     std::span<const SubwordSequence> windows) {
  std::vector<std::vector<PunctClass>> out;
  out.reserve(windows.size());
  SequenceCache cache;
  for (const auto& seq : windows) {
    forward_sequence(params, seq, cache);
    std::vector<PunctClass> labels(seq.ids.size(), PunctClass::kIgnore);
    for (std::size_t t = 0; t < seq.ids.size(); ++t) {
      if (seq.mask[t] && seq.labels[t] != PunctClass::kIgnore) labels[t] = argmax_class(cache.logits[t]);
    }
    out.push_back(std::move(labels));
  }
  return out;
}

std::vector<PunctClass> predict(const ModelParams& params,
                                std::span<const SubwordSequence> windows) {
  std::vector<PunctClass> out;
  for (const auto& labels : predict_windows(params, windows)) {
    for (PunctClass c : labels) {
      if (c != PunctClass::kIgnore) out.push_back(c);
    }
  }
  return out;
}

}  // namespace bnpunct
