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
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace hdgbs {

using cplx = std::complex<double>;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kSymmetricTol = 1e-12;

/// Dense complex matrix, row-major. Value semantic; copies are deep.
///
/// Producers that establish unitarity or symmetry record it in the flags so
/// consumers can skip re-validation; flags are dropped on mutable access.
class ComplexMatrix {
 public:
  enum Flags : std::uint8_t { kNone = 0, kUnitary = 1, kSymmetric = 2 };

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  cplx& operator()(std::size_t i, std::size_t j) {
    flags_ = kNone;
    return entries_[i * cols_ + j];
  }

  std::span<const cplx> entries() const { return entries_; }
  std::span<cplx> mutable_entries() {
    flags_ = kNone;
    return entries_;
  }
  std::span<const cplx> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  std::span<cplx> mutable_row(std::size_t i) {
    flags_ = kNone;
    return {entries_.data() + i * cols_, cols_};
  }

  std::uint8_t flags() const { return flags_; }
  bool flagged_unitary() const { return flags_ & kUnitary; }
  bool flagged_symmetric() const { return flags_ & kSymmetric; }

  /// Checks the invariant and records it; throws ContractViolation when it fails.
  ComplexMatrix& assert_unitary(double tol = kUnitaryTol);
  ComplexMatrix& assert_symmetric(double tol = kSymmetricTol);
  /// Records a flag without checking. For producers whose construction
  /// guarantees the property.
  ComplexMatrix& set_flags(std::uint8_t f) {
    flags_ = f;
    return *this;
  }

  ComplexMatrix transpose() const;
  ComplexMatrix adjoint() const;

  bool operator==(const ComplexMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
  std::uint8_t flags_ = kNone;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

double max_abs(const ComplexMatrix& a);
/// max-norm of (M M^dagger - I).
double unitarity_defect(const ComplexMatrix& m);
/// max-norm of (M - M^T).
double symmetry_defect(const ComplexMatrix& m);

/// Symmetric check with tolerance scaled by the largest entry magnitude.
bool is_symmetric(const ComplexMatrix& m, double tol = kSymmetricTol);

/// {"rows": r, "cols": c, "re": [...], "im": [...]}, row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Rejects missing fields and length mismatches with ContractViolation.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace hdgbs
