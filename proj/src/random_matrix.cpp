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

#include "hdgbs/random_matrix.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>

#include "eigen_bridge.hpp"
#include "hdgbs/error.hpp"
#include "hdgbs/kernels.hpp"

namespace hdgbs {

namespace {

// Column phases of R folded into Q make the distribution exactly Haar.
detail::EigenMatrix phase_fixed_q(const detail::EigenMatrix& g, std::size_t cols) {
  Eigen::HouseholderQR<detail::EigenMatrix> qr(g);
  detail::EigenMatrix q = qr.householderQ() * detail::EigenMatrix::Identity(g.rows(), Eigen::Index(cols));
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < Eigen::Index(cols); ++j) {
    const cplx d = r(j, j);
    const double mag = std::abs(d);
    const cplx phase = mag > 0.0 ? d / mag : cplx{1.0, 0.0};
    q.col(j) *= phase;
  }
  return q;
}

void check_pattern_length(const ComplexMatrix& a, const OutcomePattern& n) {
  if (n.modes() != a.rows())
    throw DimensionError("pattern length " + std::to_string(n.modes()) + " != matrix size " +
                         std::to_string(a.rows()));
}

}  // namespace

ComplexMatrix ginibre(std::size_t n, std::size_t k, double variance, Rng& rng) {
  if (n == 0 || k == 0) throw DimensionError("ginibre needs n, k >= 1");
  if (!(variance > 0.0)) throw ParameterError("ginibre variance must be positive");
  const double s = std::sqrt(variance / 2.0);
  std::vector<cplx> e(n * k);
  for (auto& z : e) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = {s * re, s * im};
  }
  return ComplexMatrix(n, k, std::move(e));
}

ComplexMatrix ginibre(std::size_t n, std::size_t k, double variance, Seed seed) {
  Rng rng(seed);
  return ginibre(n, k, variance, rng);
}

ComplexMatrix haar_unitary(std::size_t m, Rng& rng) {
  if (m == 0) throw DimensionError("haar_unitary needs m >= 1");
  const ComplexMatrix g = ginibre(m, m, 1.0, rng);
  ComplexMatrix u = detail::from_eigen(phase_fixed_q(detail::as_eigen(g), m));
  u.set_flags(ComplexMatrix::kUnitary);
  return u;
}

ComplexMatrix haar_unitary(std::size_t m, Seed seed) {
  Rng rng(seed);
  return haar_unitary(m, rng);
}

ComplexMatrix haar_columns(std::size_t m, std::size_t cols, Rng& rng) {
  if (cols == 0 || cols > m) throw DimensionError("haar_columns needs 1 <= cols <= m");
  const ComplexMatrix g = ginibre(m, cols, 1.0, rng);
  return detail::from_eigen(phase_fixed_q(detail::as_eigen(g), cols));
}

ComplexMatrix reduce_by_pattern(const ComplexMatrix& a, const OutcomePattern& n) {
  if (!a.square()) throw DimensionError("reduce_by_pattern needs a square matrix");
  check_pattern_length(a, n);
  if (!is_symmetric(a)) throw ContractViolation("reduce_by_pattern needs a symmetric matrix");
  std::vector<std::size_t> idx;
  idx.reserve(n.total());
  for (std::size_t i = 0; i < n.modes(); ++i)
    for (unsigned c = 0; c < n.counts[i]; ++c) idx.push_back(i);
  ComplexMatrix out(idx.size(), idx.size());
  auto e = out.mutable_entries();
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) e[i * idx.size() + j] = a(idx[i], idx[j]);
  out.set_flags(ComplexMatrix::kSymmetric);
  return out;
}

ComplexMatrix symmetric_product_submatrix(const ComplexMatrix& u, const OutcomePattern& n, std::size_t k) {
  if (!u.square()) throw DimensionError("symmetric_product_submatrix needs a square unitary");
  check_pattern_length(u, n);
  if (!n.collision_free()) throw ContractViolation("pattern is not collision-free");
  if (k == 0 || k > u.rows()) throw ParameterError("K must satisfy 1 <= K <= M");
  if (!u.flagged_unitary() && unitarity_defect(u) > kUnitaryTol) throw ContractViolation("U is not unitary");

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n.modes(); ++i)
    if (n.counts[i]) idx.push_back(i);
  const auto& kern = kernels::active();
  const std::size_t nn = idx.size();
  ComplexMatrix out(nn, nn);
  auto e = out.mutable_entries();
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i; j < nn; ++j) {
      const cplx v = kern.dotu(u.row(idx[i]).data(), u.row(idx[j]).data(), k);
      e[i * nn + j] = v;
      e[j * nn + i] = v;
    }
  out.set_flags(ComplexMatrix::kSymmetric);
  return out;
}

}  // namespace hdgbs
