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

#include <cstddef>

#include "hdgbs/matrix.hpp"
#include "hdgbs/pattern.hpp"
#include "hdgbs/rng.hpp"

namespace hdgbs {

/// Haar-random m x m unitary: QR of a Ginibre matrix with the column phases
/// of R folded back into Q.
ComplexMatrix haar_unitary(std::size_t m, Seed seed);
ComplexMatrix haar_unitary(std::size_t m, Rng& rng);

/// First `cols` columns of an m x m Haar unitary, in O(m cols^2).
ComplexMatrix haar_columns(std::size_t m, std::size_t cols, Rng& rng);

/// n x k matrix of i.i.d. complex normal entries with E|z|^2 = variance.
ComplexMatrix ginibre(std::size_t n, std::size_t k, double variance, Seed seed);
ComplexMatrix ginibre(std::size_t n, std::size_t k, double variance, Rng& rng);

/// Repeats row/column i of `a` counts[i] times, dropping zero-count rows.
ComplexMatrix reduce_by_pattern(const ComplexMatrix& a, const OutcomePattern& n);

/// U_{n,1_K} U_{n,1_K}^T for a collision-free pattern: equals (U I_K U^T)_{n,n}.
ComplexMatrix symmetric_product_submatrix(const ComplexMatrix& u, const OutcomePattern& n, std::size_t k);

}  // namespace hdgbs
