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
#include <iosfwd>
#include <map>
#include <string>

#include "bnpunct/net.hpp"

namespace bnpunct {

struct CheckpointMeta {
  std::uint64_t vocab_hash = 0;
  std::size_t epoch = 0;
  double dev_score = 0.0;
  std::map<std::string, std::string> config;  // echo of the training config

  friend bool operator==(const CheckpointMeta&, const CheckpointMeta&) = default;
};

struct Checkpoint {
  ModelParams params;
  CheckpointMeta meta;
};

// Layout:
//   "PNKT1\n"
//   "<byte length of metadata>\n"
//   metadata as JSON (dims, vocab hash, epoch, dev score, config echo,
//   parameter group order and sizes), then "\n"
//   parameters as little-endian float32, groups in BasicParams::kGroupNames
//   order, each group row-major.
void write_checkpoint(std::ostream& out, const ModelParams& params, const CheckpointMeta& meta);
void save_checkpoint(const ModelParams& params, const CheckpointMeta& meta,
                     const std::filesystem::path& path);

// Throws DataError on a wrong magic, inconsistent dims or a payload of the
// wrong length.
Checkpoint read_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace bnpunct
