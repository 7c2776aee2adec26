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

#include "hdgbs/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdgbs/error.hpp"
#include "hdgbs/kernels.hpp"

namespace hdgbs {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw DimensionError("matrix entry count " + std::to_string(entries_.size()) + " != " + std::to_string(rows_) +
                         "x" + std::to_string(cols_));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1.0;
  m.flags_ = kUnitary | kSymmetric;
  return m;
}

ComplexMatrix& ComplexMatrix::assert_unitary(double tol) {
  if (!square()) throw DimensionError("unitary matrix must be square");
  const double d = unitarity_defect(*this);
  if (!(d <= tol)) throw ContractViolation("matrix is not unitary (defect " + std::to_string(d) + ")");
  flags_ |= kUnitary;
  return *this;
}

ComplexMatrix& ComplexMatrix::assert_symmetric(double tol) {
  if (!square()) throw DimensionError("symmetric matrix must be square");
  if (!is_symmetric(*this, tol)) throw ContractViolation("matrix is not symmetric");
  flags_ |= kSymmetric;
  return *this;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = entries_[i * cols_ + j];
  t.flags_ = flags_;
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = std::conj(entries_[i * cols_ + j]);
  t.flags_ = flags_ & kUnitary;
  return t;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matrix product shape mismatch " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  const auto& k = kernels::active();
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.mutable_row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const cplx s = a(i, l);
      if (s == cplx{}) continue;
      k.axpy(s, b.row(l).data(), crow.data(), b.cols());
    }
  }
  return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference shape mismatch");
  std::vector<cplx> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries()[i] - b.entries()[i];
  return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  std::vector<cplx> e(a.entries().begin(), a.entries().end());
  for (auto& x : e) x *= s;
  ComplexMatrix out(a.rows(), a.cols(), std::move(e));
  out.set_flags(a.flags() & ComplexMatrix::kSymmetric);
  return out;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const cplx& x : a.entries()) m = std::max(m, std::abs(x));
  return m;
}

double unitarity_defect(const ComplexMatrix& m) {
  if (!m.square()) return INFINITY;
  const std::size_t n = m.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s{};
      for (std::size_t l = 0; l < n; ++l) s += m(i, l) * std::conj(m(j, l));
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

double symmetry_defect(const ComplexMatrix& m) {
  if (!m.square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

bool is_symmetric(const ComplexMatrix& m, double tol) {
  if (!m.square()) return false;
  if (m.flagged_symmetric()) return true;
  return symmetry_defect(m) <= tol * std::max(1.0, max_abs(m));
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (const cplx& x : m.entries()) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") || !j.contains("im"))
    throw ContractViolation("matrix JSON needs rows, cols, re, im");
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != rows * cols || im.size() != rows * cols)
    throw DimensionError("matrix JSON length mismatch: expected " + std::to_string(rows * cols) + " got re=" +
                         std::to_string(re.size()) + " im=" + std::to_string(im.size()));
  std::vector<cplx> e(rows * cols);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = {re[i], im[i]};
  return ComplexMatrix(rows, cols, std::move(e));
}

}  // namespace hdgbs
