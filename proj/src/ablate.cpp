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

#include "bnpunct/ablate.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bnpunct/checkpoint.hpp"
#include "bnpunct/rng.hpp"
#include "bnpunct/train.hpp"

namespace bnpunct {
namespace {

constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
}

std::string variant_dir(std::optional<double> alpha) {
  std::string name = format_alpha(alpha);
  for (char& c : name) {
    if (c == '=') c = '_';
  }
  return name;
}

}  // namespace

std::vector<SubwordSequence> noisy_eval_windows(std::span<const Document> docs, const BpeModel& bpe,
                                                std::size_t seq_len, double rate,
                                                std::uint64_t seed) {
  AugmentConfig noise;
  noise.alpha = rate;
  noise.sub_prob = 1.0;
  noise.del_prob = 0.0;
  noise.seed = derive_seed(seed, kNoiseStream);
  std::vector<PieceStream> streams;
  for (const auto& d : docs) streams.push_back(to_piece_stream(bpe, d));
  std::vector<SubwordSequence> windows;
  for (const auto& s : augment_dataset(streams, noise)) {
    for (auto& w : frame_stream(s, seq_len)) windows.push_back(std::move(w));
  }
  return windows;
}

std::string format_history(const TrainHistory& history) {
  std::ostringstream os;
  os << "epoch\ttrain_loss\tdev_micro_f1\tdev_accuracy\tselected\n";
  for (std::size_t i = 0; i < history.epochs.size(); ++i) {
    const auto& e = history.epochs[i];
    os << e.epoch << '\t' << shortest(e.train_loss) << '\t' << shortest(e.dev.micro.f1) << '\t'
       << shortest(e.dev.accuracy) << '\t' << (history.selected == i ? 1 : 0) << '\n';
  }
  return os.str();
}

AblationResult run_ablation(const AblationData& data, const RunConfig& cfg,
                            const std::filesystem::path& out_dir) {
  const BpeModel bpe = train_bpe(data.train, cfg.num_merges);
  const bool write = !out_dir.empty();
  if (write) {
    std::filesystem::create_directories(out_dir);
    save_bpe(bpe, out_dir / "bpe.txt");
  }

  const std::size_t seq_len = cfg.train.seq_len;
  std::vector<std::pair<std::string, std::vector<SubwordSequence>>> test_sets;
  for (const auto& [name, docs] : data.tests) {
    test_sets.emplace_back(name, eval_windows(docs, bpe, seq_len));
    if (cfg.test_noise) {
      test_sets.emplace_back(name + "+noise",
                             noisy_eval_windows(docs, bpe, seq_len, *cfg.test_noise, cfg.seed));
    }
  }

  AblationResult result;
  for (const auto& alpha : cfg.alphas) {
    const std::string variant = format_alpha(alpha);
    try {
      const TrainConfig tc = cfg.train_config(alpha);
      const TrainResult tr = train(data.train, data.dev, bpe, tc);
      if (tr.diverged) throw NumericError(tr.divergence);
      for (const auto& [name, windows] : test_sets) {
        result.entries.push_back({variant, name, evaluate(tr.best, windows)});
      }
      if (write) {
        const auto dir = out_dir / variant_dir(alpha);
        std::filesystem::create_directories(dir);
        CheckpointMeta meta;
        meta.vocab_hash = bpe.vocab_hash();
        if (tr.history.selected) {
          meta.epoch = tr.history.epochs[*tr.history.selected].epoch;
          meta.dev_score = selection_metric(tr.history.epochs[*tr.history.selected].dev);
        }
        meta.config = cfg.echo();
        meta.config["alpha"] = alpha ? shortest(*alpha) : "none";
        save_checkpoint(tr.best, meta, dir / "model.ckpt");
        write_file(dir / "history.tsv", format_history(tr.history));
      }
    } catch (const Error& e) {
      result.failures.push_back(variant + ": " + e.what());
    }
  }
  if (write) {
    write_file(out_dir / "ablation.txt", ablation_text(result.entries));
    write_file(out_dir / "ablation.tsv", ablation_delimited(result.entries));
  }
  return result;
}

}  // namespace bnpunct
