/**
 * Copyright 2026 The hdgbs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "kernels_internal.hpp"

#if defined(HDGBS_HAVE_AVX2)

#include <immintrin.h>

// Two complex doubles per register: [re0, im0, re1, im1].

namespace hdgbs::kernels::detail {

namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (vr + i vi) * x for both lanes of x.
inline __m256d cmul_bcast(__m256d vr, __m256d vi, __m256d x) {
  const __m256d swapped = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(x, vr, _mm256_mul_pd(swapped, vi));
}

}  // namespace

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul_bcast(ar, ai, load2(x + i))));
  if (i < n) axpy_scalar(alpha, x + i, y + i, n - i);
}

cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc_r = _mm256_setzero_pd();  // [xr yr, xi yr]
  __m256d acc_i = _mm256_setzero_pd();  // [xi yi, xr yi]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    acc_r = _mm256_fmadd_pd(xv, _mm256_movedup_pd(yv), acc_r);
    acc_i = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), _mm256_permute_pd(yv, 0xF), acc_i);
  }
  const __m256d s = _mm256_addsub_pd(acc_r, acc_i);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, s);
  cplx out{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  if (i < n) out += dotu_scalar(x + i, y + i, n - i);
  return out;
}

void rot2_avx2(const cplx* v, cplx* a, cplx* b, std::size_t n) {
  const __m256d v00r = _mm256_set1_pd(v[0].real()), v00i = _mm256_set1_pd(v[0].imag());
  const __m256d v01r = _mm256_set1_pd(v[1].real()), v01i = _mm256_set1_pd(v[1].imag());
  const __m256d v10r = _mm256_set1_pd(v[2].real()), v10i = _mm256_set1_pd(v[2].imag());
  const __m256d v11r = _mm256_set1_pd(v[3].real()), v11i = _mm256_set1_pd(v[3].imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d av = load2(a + k);
    const __m256d bv = load2(b + k);
    store2(a + k, _mm256_add_pd(cmul_bcast(v00r, v00i, av), cmul_bcast(v01r, v01i, bv)));
    store2(b + k, _mm256_add_pd(cmul_bcast(v10r, v10i, av), cmul_bcast(v11r, v11i, bv)));
  }
  if (k < n) rot2_scalar(v, a + k, b + k, n - k);
}

}  // namespace hdgbs::kernels::detail

#endif
