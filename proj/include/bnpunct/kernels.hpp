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

#include <cstddef>
#include <string_view>

// Dense inner loops of the BiLSTM. Every kernel has a scalar reference in
// kernels/scalar.cpp; kernels/avx2.cpp provides vectorized versions that are
// picked at runtime when the CPU supports AVX2 and FMA. Matrices are
// row-major with `cols` contiguous elements per row. Weights may be float or
// double; activations and accumulators are always double.
namespace bnpunct::kernels {

enum class Isa { kScalar, kAvx2 };

struct Table {
  Isa isa;
  std::string_view name;

  // y[r] += sum_c a[r, c] * x[c]
  void (*gemv_f32)(const float* a, std::size_t rows, std::size_t cols, const double* x,
                   double* y);
  void (*gemv_f64)(const double* a, std::size_t rows, std::size_t cols, const double* x,
                   double* y);
  // y[c] += sum_r a[r, c] * x[r]
  void (*gemv_t_f32)(const float* a, std::size_t rows, std::size_t cols, const double* x,
                     double* y);
  void (*gemv_t_f64)(const double* a, std::size_t rows, std::size_t cols, const double* x,
                     double* y);
  // a[r, c] += x[r] * y[c]
  void (*ger)(double* a, std::size_t rows, std::size_t cols, const double* x, const double* y);
  // y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, double alpha, const double* x, double* y);
};

const Table& scalar_table();
// nullptr when the build or the CPU lacks AVX2/FMA.
const Table* avx2_table();

// The table used by the network. Defaults to the best available ISA; the
// BNPUNCT_KERNELS environment variable ("scalar" or "avx2") overrides it.
const Table& active();

// Forces a table for the rest of the process (tests, benchmarks). Returns
// false if the ISA is unavailable.
bool select(Isa isa);

inline void gemv(const float* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  active().gemv_f32(a, rows, cols, x, y);
}
inline void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  active().gemv_f64(a, rows, cols, x, y);
}
inline void gemv_t(const float* a, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
  active().gemv_t_f32(a, rows, cols, x, y);
}
inline void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
  active().gemv_t_f64(a, rows, cols, x, y);
}
inline void ger(double* a, std::size_t rows, std::size_t cols, const double* x, const double* y) {
  active().ger(a, rows, cols, x, y);
}
inline void axpy(std::size_t n, double alpha, const double* x, double* y) {
  active().axpy(n, alpha, x, y);
}

}  // namespace bnpunct::kernels
