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

#include "bnpunct/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace bnpunct {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* last = v.data() + v.size();
  auto res = std::from_chars(v.data(), last, out);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* last = v.data() + v.size();
  auto res = std::from_chars(v.data(), last, out);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("config key '" + key + "': not a non-negative integer: '" + v + "'");
  }
  return out;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": repeated key '" + key + "'");
    }
  }
  return kv;
}

std::map<std::string, std::string> load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

std::string format_alpha(std::optional<double> alpha) {
  if (!alpha) return "none";
  char buf[32];
  std::snprintf(buf, sizeof buf, "alpha=%.2f", *alpha);
  return buf;
}

AugmentConfig RunConfig::augment_config(double a) const {
  AugmentConfig cfg;
  cfg.alpha = a;
  cfg.sub_prob = sub_prob;
  cfg.del_prob = del_prob;
  cfg.seed = seed;
  return cfg;
}

TrainConfig RunConfig::train_config(std::optional<double> a) const {
  TrainConfig cfg = train;
  cfg.init_seed = seed;
  cfg.augment.reset();
  if (a && *a > 0.0) cfg.augment = augment_config(*a);
  return cfg;
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> e;
  e["lr"] = shortest(train.learning_rate);
  e["batch_size"] = std::to_string(train.batch_size);
  e["epochs"] = std::to_string(train.epochs);
  e["seq_len"] = std::to_string(train.seq_len);
  e["shuffle_seed"] = std::to_string(train.shuffle_seed);
  e["emb_dim"] = std::to_string(train.emb_dim);
  e["hidden_dim"] = std::to_string(train.hidden_dim == 0 ? train.emb_dim : train.hidden_dim);
  e["clip_norm"] = shortest(train.clip_norm);
  e["alpha"] = shortest(alpha);
  e["sub_prob"] = shortest(sub_prob);
  e["del_prob"] = shortest(del_prob);
  e["seed"] = std::to_string(seed);
  e["num_merges"] = std::to_string(num_merges);
  return e;
}

RunConfig apply_config(RunConfig cfg, const std::map<std::string, std::string>& kv) {
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"lr", [&](auto& k, auto& v) { cfg.train.learning_rate = to_double(k, v); }},
      {"batch_size", [&](auto& k, auto& v) { cfg.train.batch_size = to_uint(k, v); }},
      {"epochs", [&](auto& k, auto& v) { cfg.train.epochs = to_uint(k, v); }},
      {"seq_len", [&](auto& k, auto& v) { cfg.train.seq_len = to_uint(k, v); }},
      {"shuffle_seed", [&](auto& k, auto& v) { cfg.train.shuffle_seed = to_uint(k, v); }},
      {"emb_dim", [&](auto& k, auto& v) { cfg.train.emb_dim = to_uint(k, v); }},
      {"hidden_dim", [&](auto& k, auto& v) { cfg.train.hidden_dim = to_uint(k, v); }},
      {"clip_norm", [&](auto& k, auto& v) { cfg.train.clip_norm = to_double(k, v); }},
      {"alpha", [&](auto& k, auto& v) { cfg.alpha = to_double(k, v); }},
      {"sub_prob", [&](auto& k, auto& v) { cfg.sub_prob = to_double(k, v); }},
      {"del_prob", [&](auto& k, auto& v) { cfg.del_prob = to_double(k, v); }},
      {"seed", [&](auto& k, auto& v) { cfg.seed = to_uint(k, v); }},
      {"num_merges", [&](auto& k, auto& v) { cfg.num_merges = to_uint(k, v); }},
      {"stride", [&](auto& k, auto& v) { cfg.stride = to_uint(k, v); }},
      {"test_noise", [&](auto& k, auto& v) { cfg.test_noise = to_double(k, v); }},
      {"alphas",
       [&](auto& k, auto& v) {
         cfg.alphas.clear();
         for (const auto& item : split_list(v)) {
           if (item == "none") {
             cfg.alphas.push_back(std::nullopt);
           } else {
             cfg.alphas.push_back(to_double(k, item));
           }
         }
         if (cfg.alphas.empty()) throw ConfigError("config key 'alphas': empty grid");
       }},
      {"train", [&](auto&, auto& v) { cfg.train_path = v; }},
      {"dev", [&](auto&, auto& v) { cfg.dev_path = v; }},
      {"test",
       [&](auto& k, auto& v) {
         cfg.test_paths.clear();
         for (const auto& item : split_list(v)) {
           const auto eq = item.find('=');
           if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
             throw ConfigError("config key '" + k + "': expected name=path entries");
           }
           cfg.test_paths.push_back({item.substr(0, eq), item.substr(eq + 1)});
         }
       }},
      {"bpe", [&](auto&, auto& v) { cfg.bpe_path = v; }},
      {"checkpoint", [&](auto&, auto& v) { cfg.checkpoint_path = v; }},
      {"out", [&](auto&, auto& v) { cfg.out_dir = v; }},
  };
  for (const auto& [key, value] : kv) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(key, value);
  }
  cfg.train.validate();
  cfg.augment_config(cfg.alpha).validate();
  for (const auto& a : cfg.alphas) {
    if (a) cfg.augment_config(*a).validate();
  }
  if (cfg.test_noise) {
    AugmentConfig noise;
    noise.alpha = *cfg.test_noise;
    noise.validate();
  }
  if (cfg.stride != 0 && cfg.stride > cfg.train.seq_len - 2) {
    throw ConfigError("stride must lie in [1, seq_len - 2]");
  }
  return cfg;
}

}  // namespace bnpunct
