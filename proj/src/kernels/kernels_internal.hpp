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

#include "hdgbs/kernels.hpp"

namespace hdgbs::kernels::detail {

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n);
cplx dotu_scalar(const cplx* x, const cplx* y, std::size_t n);
void rot2_scalar(const cplx* v, cplx* a, cplx* b, std::size_t n);

#if defined(HDGBS_HAVE_AVX2)
void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n);
cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n);
void rot2_avx2(const cplx* v, cplx* a, cplx* b, std::size_t n);
#endif

}  // namespace hdgbs::kernels::detail
