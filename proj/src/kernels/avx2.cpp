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

// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "bnpunct/kernels.hpp"

namespace bnpunct::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d load4(const float* p) { return _mm256_cvtps_pd(_mm_loadu_ps(p)); }
inline __m256d load4(const double* p) { return _mm256_loadu_pd(p); }

template <class W>
void gemv_avx2(const W* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const W* row = a + r * cols;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 8 <= cols; c += 8) {
      acc0 = _mm256_fmadd_pd(load4(row + c), _mm256_loadu_pd(x + c), acc0);
      acc1 = _mm256_fmadd_pd(load4(row + c + 4), _mm256_loadu_pd(x + c + 4), acc1);
    }
    if (c + 4 <= cols) {
      acc0 = _mm256_fmadd_pd(load4(row + c), _mm256_loadu_pd(x + c), acc0);
      c += 4;
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; c < cols; ++c) acc += static_cast<double>(row[c]) * x[c];
    y[r] += acc;
  }
}

template <class W>
void gemv_t_avx2(const W* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const W* row = a + r * cols;
    const double xr = x[r];
    const __m256d vx = _mm256_set1_pd(xr);
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      _mm256_storeu_pd(y + c, _mm256_fmadd_pd(load4(row + c), vx, _mm256_loadu_pd(y + c)));
    }
    for (; c < cols; ++c) y[c] += static_cast<double>(row[c]) * xr;
  }
}

void ger_avx2(double* a, std::size_t rows, std::size_t cols, const double* x, const double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* row = a + r * cols;
    const double xr = x[r];
    const __m256d vx = _mm256_set1_pd(xr);
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      _mm256_storeu_pd(row + c, _mm256_fmadd_pd(vx, _mm256_loadu_pd(y + c), _mm256_loadu_pd(row + c)));
    }
    for (; c < cols; ++c) row[c] += xr * y[c];
  }
}

void axpy_avx2(std::size_t n, double alpha, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const Table& avx2_kernels_unchecked() {
  static const Table table{
      Isa::kAvx2,           "avx2",               &gemv_avx2<float>, &gemv_avx2<double>,
      &gemv_t_avx2<float>,  &gemv_t_avx2<double>, &ger_avx2,         &axpy_avx2,
  };
  return table;
}

}  // namespace bnpunct::kernels
