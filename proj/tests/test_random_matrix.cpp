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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hdgbs/error.hpp"
#include "hdgbs/random_matrix.hpp"
#include "oracles.hpp"

namespace {

using hdgbs::ComplexMatrix;
using hdgbs::OutcomePattern;
using hdgbs::Seed;

TEST(Haar, SingleModeIsPhase) {
  const auto u = hdgbs::haar_unitary(1, Seed{3});
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
}

TEST(Haar, UnitaryForManySizesAndSeeds) {
  for (std::size_t m : {2u, 5u, 17u, 64u})
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto u = hdgbs::haar_unitary(m, Seed{s});
      EXPECT_TRUE(u.flagged_unitary());
      EXPECT_LE(oracle::unitarity_error(u), 1e-10);
    }
}

TEST(Haar, DeterministicForSeed) {
  EXPECT_EQ(hdgbs::haar_unitary(6, Seed{9}), hdgbs::haar_unitary(6, Seed{9}));
  EXPECT_FALSE(hdgbs::haar_unitary(6, Seed{9}) == hdgbs::haar_unitary(6, Seed{10}));
}

TEST(Haar, SecondMomentOfEntry) {
  // E|U_00|^2 = 1/m; Var|U_00|^2 = (m-1)/(m^2 (m+1)).
  const std::size_t m = 200, samples = 10000;
  hdgbs::Rng rng(Seed{21});
  double sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) sum += std::norm(hdgbs::haar_columns(m, 1, rng)(0, 0));
  const double mean = sum / double(samples);
  const double se = std::sqrt(double(m - 1) / (double(m * m) * double(m + 1)) / double(samples));
  EXPECT_NEAR(mean, 1.0 / double(m), 3.0 * se);
}

TEST(Haar, FirstRowPhaseIsUniform) {
  // Phase-fixed QR: arg U_00 uniform on the circle, so E[U_00] = 0.
  hdgbs::Rng rng(Seed{22});
  std::complex<double> s = 0.0;
  const std::size_t samples = 20000;
  for (std::size_t k = 0; k < samples; ++k) s += hdgbs::haar_unitary(3, rng)(0, 0);
  EXPECT_LT(std::abs(s) / double(samples), 4.0 * std::sqrt(1.0 / 3.0 / double(samples)));
}

TEST(Haar, ColumnsAreOrthonormal) {
  hdgbs::Rng rng(Seed{23});
  const auto w = hdgbs::haar_columns(9, 4, rng);
  const auto p = oracle::matmul(oracle::adjoint(w), w);
  EXPECT_LE(oracle::max_diff(p, ComplexMatrix::identity(4)), 1e-12);
  EXPECT_THROW(hdgbs::haar_columns(3, 4, rng), hdgbs::DimensionError);
}

TEST(Ginibre, ShapeAndVariance) {
  const auto g = hdgbs::ginibre(2, 3, 1.0, Seed{1});
  EXPECT_EQ(g.rows(), 2u);
  EXPECT_EQ(g.cols(), 3u);
  hdgbs::Rng rng(Seed{31});
  const std::size_t samples = 100000;
  const auto big = hdgbs::ginibre(1, samples, 1.0, rng);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double v = std::norm(big(0, i));
    s += v;
    s2 += v * v;
  }
  const double mean = s / double(samples);
  const double sd = std::sqrt(s2 / double(samples) - mean * mean);
  EXPECT_NEAR(mean, 1.0, 3.0 * sd / std::sqrt(double(samples)));

  const auto small = hdgbs::ginibre(200, 200, 1.0 / 200, Seed{32});
  double v = 0.0;
  for (auto x : small.entries()) v += std::norm(x);
  EXPECT_NEAR(v / 40000.0, 0.005, 0.0002);
}

TEST(Ginibre, RejectsBadInput) {
  EXPECT_THROW(hdgbs::ginibre(0, 2, 1.0, Seed{1}), hdgbs::DimensionError);
  EXPECT_THROW(hdgbs::ginibre(2, 2, 0.0, Seed{1}), hdgbs::ParameterError);
}

TEST(ReduceByPattern, Semantics) {
  std::mt19937_64 gen(41);
  const auto a2 = oracle::random_symmetric(2, gen);
  const auto r = hdgbs::reduce_by_pattern(a2, OutcomePattern{{2, 0}});
  ASSERT_EQ(r.rows(), 2u);
  for (auto x : r.entries()) EXPECT_EQ(x, a2(0, 0));

  const auto a3 = oracle::random_symmetric(3, gen);
  const auto s = hdgbs::reduce_by_pattern(a3, OutcomePattern{{1, 0, 1}});
  EXPECT_EQ(s(0, 0), a3(0, 0));
  EXPECT_EQ(s(0, 1), a3(0, 2));
  EXPECT_EQ(s(1, 1), a3(2, 2));

  EXPECT_EQ(hdgbs::reduce_by_pattern(a3, OutcomePattern{{0, 0, 0}}).rows(), 0u);
  EXPECT_THROW(hdgbs::reduce_by_pattern(a3, OutcomePattern{{1, 1}}), hdgbs::DimensionError);
  EXPECT_THROW(hdgbs::reduce_by_pattern(oracle::random_matrix(3, 3, gen), OutcomePattern{{1, 0, 1}}),
               hdgbs::ContractViolation);
}

TEST(SymmetricProduct, MatchesDenseAlgebra) {
  const auto u = hdgbs::haar_unitary(6, Seed{51});
  ComplexMatrix ik(6, 6);
  for (std::size_t i = 0; i < 3; ++i) ik(i, i) = 1.0;
  const auto dense = oracle::matmul(oracle::matmul(u, ik), oracle::transpose(u));
  const OutcomePattern n{{0, 1, 0, 0, 1, 0}};
  const auto got = hdgbs::symmetric_product_submatrix(u, n, 3);
  EXPECT_LE(std::abs(got(0, 0) - dense(1, 1)), 1e-12);
  EXPECT_LE(std::abs(got(0, 1) - dense(1, 4)), 1e-12);
  EXPECT_LE(std::abs(got(1, 1) - dense(4, 4)), 1e-12);
  EXPECT_LE(hdgbs::symmetry_defect(got), 1e-12);
}

TEST(SymmetricProduct, FullKIsUUt) {
  const auto u = hdgbs::haar_unitary(5, Seed{52});
  const auto uut = oracle::matmul(u, oracle::transpose(u));
  const OutcomePattern n{{1, 1, 0, 0, 1}};
  EXPECT_LE(oracle::max_diff(hdgbs::symmetric_product_submatrix(u, n, 5),
                             hdgbs::reduce_by_pattern(uut, n)),
            1e-12);
}

TEST(SymmetricProduct, Errors) {
  const auto u = hdgbs::haar_unitary(4, Seed{53});
  EXPECT_THROW(hdgbs::symmetric_product_submatrix(u, OutcomePattern{{2, 0, 0, 0}}, 2), hdgbs::ContractViolation);
  EXPECT_THROW(hdgbs::symmetric_product_submatrix(u, OutcomePattern{{1, 0, 0, 0}}, 5), hdgbs::ParameterError);
  EXPECT_THROW(hdgbs::symmetric_product_submatrix(u, OutcomePattern{{1, 0, 0}}, 2), hdgbs::DimensionError);
}

}  // namespace
