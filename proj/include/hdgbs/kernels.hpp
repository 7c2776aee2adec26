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

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace hdgbs::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Complex inner loops shared by the Hafnian engine, circuit construction and
/// tensor contraction. Every ISA variant must agree with the scalar reference
/// to rounding (FMA contraction allowed).
struct KernelTable {
  /// y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// sum_i x[i] * y[i] (no conjugation)
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  /// (a, b) <- (v00 a + v01 b, v10 a + v11 b), v row-major 2x2
  void (*rot2)(const cplx* v, cplx* a, cplx* b, std::size_t n);
  Isa isa;
};

const KernelTable& scalar_table();
/// nullptr when the binary or the running CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

/// Best table for this CPU unless overridden by select() or HDGBS_ISA=scalar.
const KernelTable& active();
/// Throws ParameterError if the ISA is not available here.
void select(Isa isa);
bool available(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace hdgbs::kernels
