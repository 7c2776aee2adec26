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

#include <Eigen/Dense>

#include "hdgbs/matrix.hpp"

namespace hdgbs::detail {

using EigenMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& m) {
  return {m.entries().data(), Eigen::Index(m.rows()), Eigen::Index(m.cols())};
}

inline ComplexMatrix from_eigen(const EigenMatrix& e) {
  return ComplexMatrix(std::size_t(e.rows()), std::size_t(e.cols()),
                       std::vector<cplx>(e.data(), e.data() + e.size()));
}

}  // namespace hdgbs::detail
