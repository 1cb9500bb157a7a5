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

#include "bnpunct/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace bnpunct {
namespace {

constexpr std::string_view kMagic = "PNKT1";

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

void put_f32(std::string& out, float v) {
  std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xffu));
}

float get_f32(const unsigned char* p) {
  std::uint32_t bits = 0;
  for (int i = 0; i < 4; ++i) bits |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return std::bit_cast<float>(bits);
}

}  // namespace

void write_checkpoint(std::ostream& out, const ModelParams& params, const CheckpointMeta& meta) {
  nlohmann::json j;
  j["dims"] = {{"vocab", params.dims.vocab},
               {"emb", params.dims.emb},
               {"hidden", params.dims.hidden}};
  j["vocab_hash"] = hex64(meta.vocab_hash);
  j["epoch"] = meta.epoch;
  j["dev_score"] = meta.dev_score;
  j["config"] = meta.config;
  nlohmann::json layout = nlohmann::json::array();
  const auto groups = params.groups();
  for (std::size_t g = 0; g < kNumParamGroups; ++g) {
    layout.push_back({ModelParams::kGroupNames[g], groups[g].size()});
  }
  j["layout"] = layout;
  j["num_values"] = params.num_values();
  const std::string text = j.dump();

  std::string payload;
  payload.reserve(params.num_values() * 4);
  for (const auto& g : groups) {
    for (float v : g) put_f32(payload, v);
  }
  out << kMagic << '\n' << text.size() << '\n' << text << '\n';
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

void save_checkpoint(const ModelParams& params, const CheckpointMeta& meta,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  write_checkpoint(out, params, meta);
  if (!out) throw DataError("write failed: " + path.string());
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw DataError("not a checkpoint (bad magic)");
  if (!std::getline(in, line)) throw DataError("checkpoint truncated in header");
  std::size_t meta_len = 0;
  try {
    std::size_t used = 0;
    meta_len = std::stoull(line, &used);
    if (used != line.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw DataError("checkpoint header: bad metadata length");
  }
  std::string text(meta_len, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(meta_len)) || in.get() != '\n') {
    throw DataError("checkpoint truncated in metadata");
  }

  Checkpoint ck;
  try {
    const auto j = nlohmann::json::parse(text);
    ck.params.dims = make_dims(j.at("dims").at("vocab").get<std::size_t>(),
                               j.at("dims").at("emb").get<std::size_t>(),
                               j.at("dims").at("hidden").get<std::size_t>());
    ck.meta.vocab_hash = std::stoull(j.at("vocab_hash").get<std::string>(), nullptr, 16);
    ck.meta.epoch = j.at("epoch").get<std::size_t>();
    ck.meta.dev_score = j.at("dev_score").get<double>();
    ck.meta.config = j.at("config").get<std::map<std::string, std::string>>();
    const auto n = j.at("num_values").get<std::size_t>();
    const auto& d = ck.params.dims;
    if (d.vocab == 0 || d.emb == 0 || d.hidden == 0) throw DataError("zero dimension");
    ck.params = ModelParams::zeros(d);
    if (n != ck.params.num_values()) {
      throw DataError("num_values " + std::to_string(n) + " inconsistent with dims");
    }
  } catch (const DataError& e) {
    throw DataError(std::string("checkpoint metadata: ") + e.what());
  } catch (const std::exception& e) {
    throw DataError(std::string("checkpoint metadata: ") + e.what());
  }

  const std::string payload{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const std::size_t expected = ck.params.num_values() * 4;
  if (payload.size() != expected) {
    throw DataError("checkpoint payload has " + std::to_string(payload.size()) +
                    " bytes, expected " + std::to_string(expected));
  }
  const auto* p = reinterpret_cast<const unsigned char*>(payload.data());
  for (auto g : ck.params.groups()) {
    for (float& v : g) {
      v = get_f32(p);
      p += 4;
    }
  }
  return ck;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path.string());
  try {
    return read_checkpoint(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace bnpunct
