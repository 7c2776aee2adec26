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

#include "hdgbs/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "hdgbs/error.hpp"
#include "hdgbs/hafnian.hpp"
#include "hdgbs/random_matrix.hpp"

namespace hdgbs {

namespace {

ComplexMatrix random_symmetric(std::size_t n, Seed seed) {
  const ComplexMatrix g = ginibre(n, n, 1.0, seed);
  ComplexMatrix a(n, n);
  auto e = a.mutable_entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = 0.5 * (g(i, j) + g(j, i));
  a.set_flags(ComplexMatrix::kSymmetric);
  return a;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// P(X <= k) for X ~ Binomial(n, 1/2).
double binom_cdf_half(std::size_t k, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i <= k; ++i)
    s += std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(i) + 1) - std::lgamma(double(n - i) + 1) -
                  double(n) * std::log(2.0));
  return std::min(1.0, s);
}

}  // namespace

double CostModel::predict(std::size_t n) const { return c * hafnian_cost_shape(double(n)); }

double hafnian_cost_shape(double n) { return n * n * n * std::exp2(n / 2.0); }

std::vector<BenchRecord> bench_hafnian(std::span<const std::size_t> sizes, std::size_t reps, Seed seed,
                                       unsigned threads) {
  if (reps == 0) throw ParameterError("reps must be >= 1");
  HafnianOptions opts;
  opts.threads = std::max(1u, threads);
  for (std::size_t n : sizes) {
    if (n % 2) throw ParameterError("benchmark size " + std::to_string(n) + " is odd");
    if (n > opts.fast_limit) throw ParameterError("benchmark size " + std::to_string(n) + " above the fast-path limit");
  }
  std::vector<BenchRecord> out;
  for (std::size_t n : sizes) {
    const ComplexMatrix a = random_symmetric(n, Seed{derive_seed(seed.value, n)});
    volatile double sink = std::abs(hafnian_fast(a, opts));
    std::vector<double> times;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      sink = sink + std::abs(hafnian_fast(a, opts));
      const auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9));
    }
    out.push_back({n, median(std::move(times)), reps, opts.threads});
  }
  return out;
}

CostModel fit_cost_model(std::span<const BenchRecord> records, std::string label) {
  if (records.size() < 4) throw ParameterError("cost fit needs at least 4 records");
  std::size_t lo = records.front().n, hi = lo;
  for (const auto& r : records) {
    if (!(r.wall_seconds > 0.0)) throw ParameterError("benchmark times must be positive");
    lo = std::min(lo, r.n);
    hi = std::max(hi, r.n);
  }
  if (hi - lo < 12) throw ParameterError("cost fit needs records spanning at least 12 in n");

  // log t = log c + log shape(n): the intercept is the mean offset.
  double mean_off = 0.0, mean_y = 0.0;
  for (const auto& r : records) {
    mean_off += std::log(r.wall_seconds) - std::log(hafnian_cost_shape(double(r.n)));
    mean_y += std::log(r.wall_seconds);
  }
  mean_off /= double(records.size());
  mean_y /= double(records.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& r : records) {
    const double y = std::log(r.wall_seconds);
    const double f = mean_off + std::log(hafnian_cost_shape(double(r.n)));
    ss_res += (y - f) * (y - f);
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  CostModel m;
  m.c = std::exp(mean_off);
  m.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  m.machine_label = std::move(label);
  return m;
}

double residual_trend_pvalue(std::span<const BenchRecord> records, const CostModel& model) {
  std::vector<std::pair<std::size_t, double>> res;
  for (const auto& r : records) res.emplace_back(r.n, std::log(r.wall_seconds) - std::log(model.predict(r.n)));
  std::sort(res.begin(), res.end());
  // Cox-Stuart: signs of later-minus-earlier residuals across the two halves.
  const std::size_t half = res.size() / 2;
  const std::size_t offset = res.size() - half;
  std::size_t pos = 0, used = 0;
  for (std::size_t i = 0; i < half; ++i) {
    const double d = res[i + offset].second - res[i].second;
    if (d == 0.0) continue;
    ++used;
    pos += d > 0.0;
  }
  if (used == 0) return 1.0;
  const std::size_t k = std::min(pos, used - pos);
  return std::min(1.0, 2.0 * binom_cdf_half(k, used));
}

CostModel extrapolate(const CostModel& model, double rmax_ratio, std::string label) {
  if (!(rmax_ratio > 0.0)) throw ParameterError("Rmax ratio must be positive");
  CostModel m = model;
  m.c = model.c / rmax_ratio;
  m.machine_label = std::move(label);
  return m;
}

SampleCost sample_time_estimate(const PhotonNumberDist& dist, const CostModel& model, double overhead,
                                double p_min) {
  if (dist.log_probs.empty()) throw ParameterError("photon-number distribution is empty");
  if (!(overhead >= 1.0)) throw ParameterError("overhead must be >= 1");
  if (!(p_min > 0.0 && p_min < 1.0)) throw ParameterError("p_min must lie in (0, 1)");
  SampleCost out;
  for (std::size_t n = 0; n <= dist.n_max(); ++n)
    if (dist.prob(n) >= p_min) out.n_cut = n;
  double s = 0.0;
  for (std::size_t n = 0; n <= out.n_cut; ++n) s += dist.prob(n) * model.predict(n);
  out.seconds = overhead * s;
  return out;
}

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records) {
  os << "n,wall_seconds,reps,threads\n";
  char buf[128];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%zu,%u\n", r.n, r.wall_seconds, r.reps, r.threads);
    os << buf;
  }
}

std::vector<BenchRecord> read_bench_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("n,wall_seconds,reps,threads", 0) != 0)
    throw ParameterError("bench CSV must start with the header n,wall_seconds,reps,threads");
  std::vector<BenchRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    BenchRecord r;
    if (!(ss >> r.n >> r.wall_seconds >> r.reps >> r.threads))
      throw ParameterError("malformed bench CSV line " + std::to_string(lineno));
    if (r.n % 2 || !(r.wall_seconds > 0.0))
      throw ParameterError("bench CSV line " + std::to_string(lineno) + " needs even n and positive time");
    out.push_back(r);
  }
  return out;
}

}  // namespace hdgbs
