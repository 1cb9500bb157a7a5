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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnpunct/train.hpp"

namespace bnpunct {

// Flat "key = value" lines; '#' starts a comment; blank lines ignored.
// Throws ConfigError on malformed lines or repeated keys.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> load_key_values(const std::filesystem::path& path);

struct NamedPath {
  std::string name;
  std::filesystem::path path;
};

// Everything a config file can set. Keys:
//   lr batch_size epochs seq_len shuffle_seed alpha sub_prob del_prob seed
//   emb_dim hidden_dim num_merges clip_norm stride alphas test_noise
//   train dev test bpe checkpoint out
struct RunConfig {
  TrainConfig train;
  double alpha = 0.0;
  double sub_prob = 0.4;
  double del_prob = 0.4;
  std::uint64_t seed = 0;
  std::size_t num_merges = 4000;
  std::size_t stride = 0;  // restore stride; 0 = seq_len / 2
  // Ablation grid; nullopt stands for "none" (no augmentation).
  std::vector<std::optional<double>> alphas = {std::nullopt, 0.10, 0.15, 0.20};
  std::optional<double> test_noise;  // UNK-substitution rate for extra noisy test rows
  std::filesystem::path train_path;
  std::filesystem::path dev_path;
  std::vector<NamedPath> test_paths;  // "name=path,name=path"
  std::filesystem::path bpe_path;
  std::filesystem::path checkpoint_path;
  std::filesystem::path out_dir;

  // Augmentation settings for a given alpha, seeded from `seed`.
  AugmentConfig augment_config(double a) const;
  // TrainConfig with seeds and augmentation resolved for one ablation cell.
  TrainConfig train_config(std::optional<double> a) const;
  // key -> value echo written into checkpoint metadata.
  std::map<std::string, std::string> echo() const;
};

// Applies key/value pairs over defaults. Unknown keys -> ConfigError.
RunConfig apply_config(RunConfig base, const std::map<std::string, std::string>& kv);

std::string format_alpha(std::optional<double> alpha);

}  // namespace bnpunct
