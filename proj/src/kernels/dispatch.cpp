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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "bnpunct/kernels.hpp"

namespace bnpunct::kernels {

#if defined(BNPUNCT_HAVE_AVX2)
const Table& avx2_kernels_unchecked();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(BNPUNCT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table& initial_table() {
  const char* env = std::getenv("BNPUNCT_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
  if (const Table* t = avx2_table()) return *t;
  return scalar_table();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{&initial_table()};
  return table;
}

}  // namespace

const Table* avx2_table() {
#if defined(BNPUNCT_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() { return *current().load(std::memory_order_relaxed); }

bool select(Isa isa) {
  const Table* t = isa == Isa::kAvx2 ? avx2_table() : &scalar_table();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace bnpunct::kernels
