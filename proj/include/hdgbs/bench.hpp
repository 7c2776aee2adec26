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
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hdgbs/probability.hpp"
#include "hdgbs/rng.hpp"

namespace hdgbs {

struct BenchRecord {
  std::size_t n = 0;
  double wall_seconds = 0.0;
  std::size_t reps = 0;
  unsigned threads = 1;
};

/// t(n) = c n^3 2^{n/2}
struct CostModel {
  double c = 0.0;
  double r_squared = 0.0;
  std::string machine_label;

  double predict(std::size_t n) const;
};

/// Paper-reported reference machine constant and the Rmax ratio used to
/// transfer it.
inline constexpr double kNiagaraC = 5.42e-15;
inline constexpr double kNiagaraOverFugaku = 122.8;

double hafnian_cost_shape(double n);

/// Median wall time over `reps` timed runs (after one discarded warm-up) on a
/// random complex symmetric matrix per size.
std::vector<BenchRecord> bench_hafnian(std::span<const std::size_t> sizes, std::size_t reps, Seed seed,
                                       unsigned threads = 1);

/// Least squares of log t against log(n^3 2^{n/2}) with unit slope.
CostModel fit_cost_model(std::span<const BenchRecord> records, std::string label = "local");

/// Cox-Stuart sign test for a monotone trend in the fit residuals ordered by
/// n. Returns the two-sided p-value.
double residual_trend_pvalue(std::span<const BenchRecord> records, const CostModel& model);

/// c' = c / rmax_ratio
CostModel extrapolate(const CostModel& model, double rmax_ratio, std::string label);

struct SampleCost {
  double seconds = 0.0;
  std::size_t n_cut = 0;
};

/// overhead * sum_{n <= n_cut} Pr(n) c n^3 2^{n/2}, n_cut the largest n with Pr(n) >= p_min.
SampleCost sample_time_estimate(const PhotonNumberDist& dist, const CostModel& model, double overhead = 100.0,
                                double p_min = 1e-7);

/// Header `n,wall_seconds,reps,threads`.
void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records);
std::vector<BenchRecord> read_bench_csv(std::istream& is);

}  // namespace hdgbs
