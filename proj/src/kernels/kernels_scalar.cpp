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

// Reference kernels. Complex products are spelled out in real arithmetic so
// the compiler does not route them through the C99 Annex G NaN handling.

namespace hdgbs::kernels::detail {

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
  }
}

cplx dotu_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

void rot2_scalar(const cplx* v, cplx* a, cplx* b, std::size_t n) {
  const double v00r = v[0].real(), v00i = v[0].imag();
  const double v01r = v[1].real(), v01i = v[1].imag();
  const double v10r = v[2].real(), v10i = v[2].imag();
  const double v11r = v[3].real(), v11i = v[3].imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    a[k] = {(v00r * ar - v00i * ai) + (v01r * br - v01i * bi), (v00r * ai + v00i * ar) + (v01r * bi + v01i * br)};
    b[k] = {(v10r * ar - v10i * ai) + (v11r * br - v11i * bi), (v10r * ai + v10i * ar) + (v11r * bi + v11i * br)};
  }
}

}  // namespace hdgbs::kernels::detail
