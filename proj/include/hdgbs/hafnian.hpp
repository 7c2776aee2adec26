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

namespace hdgbs {

enum class HafnianMethod { enumeration, fast };

struct HafnianOptions {
  /// Worker threads for the fast path; the value never depends on this.
  unsigned threads = 1;
  /// Largest N accepted by the perfect-matching enumeration.
  std::size_t enumeration_limit = 14;
  /// Largest N accepted by the fast path.
  std::size_t fast_limit = 50;
};

struct HafnianResult {
  cplx value;
  HafnianMethod method;
  std::size_t matrix_size;
};

/// Sum over all (N-1)!! perfect matchings. Haf of 0x0 is 1, odd N gives 0.
cplx hafnian_enum(const ComplexMatrix& b, std::size_t limit = 14);

/// Power-trace evaluation in O(N^3 2^{N/2}) operations.
///
/// Subsets of index pairs are split into a fixed number of contiguous chunks;
/// chunk partial sums are combined by a pairwise tree in canonical order, so
/// the result is bit-identical for any worker count.
cplx hafnian_fast(const ComplexMatrix& b, const HafnianOptions& opts = {});

HafnianResult hafnian(const ComplexMatrix& b, HafnianMethod method, const HafnianOptions& opts = {});

/// Ryser inclusion-exclusion with Gray-code updates, O(2^n n).
cplx permanent(const ComplexMatrix& g, std::size_t limit = 16);

/// Haf([[0, G], [G^T, 0]]), which equals Per(G).
cplx permanent_via_hafnian(const ComplexMatrix& g, const HafnianOptions& opts = {});

}  // namespace hdgbs
