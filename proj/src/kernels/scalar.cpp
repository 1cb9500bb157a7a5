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

#include "bnpunct/kernels.hpp"

namespace bnpunct::kernels {
namespace {

template <class W>
void gemv_ref(const W* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const W* row = a + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += static_cast<double>(row[c]) * x[c];
    y[r] += acc;
  }
}

template <class W>
void gemv_t_ref(const W* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const W* row = a + r * cols;
    const double xr = x[r];
    for (std::size_t c = 0; c < cols; ++c) y[c] += static_cast<double>(row[c]) * xr;
  }
}

void ger_ref(double* a, std::size_t rows, std::size_t cols, const double* x, const double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* row = a + r * cols;
    const double xr = x[r];
    for (std::size_t c = 0; c < cols; ++c) row[c] += xr * y[c];
  }
}

void axpy_ref(std::size_t n, double alpha, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const Table& scalar_table() {
  static const Table table{
      Isa::kScalar,      "scalar",          &gemv_ref<float>, &gemv_ref<double>,
      &gemv_t_ref<float>, &gemv_t_ref<double>, &ger_ref,         &axpy_ref,
  };
  return table;
}

}  // namespace bnpunct::kernels
