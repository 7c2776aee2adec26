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

#include "hdgbs/hiding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>

#include <Eigen/SVD>

#include "hdgbs/error.hpp"
#include "hdgbs/kernels.hpp"
#include "hdgbs/random_matrix.hpp"

namespace hdgbs {

namespace {

bool is_sub_kind(EnsembleKind k) { return k == EnsembleKind::haar_sub || k == EnsembleKind::coe_sub; }

// N x K block of a Haar unitary. Rows of a Haar unitary are the columns of
// another Haar unitary, so only N columns are orthonormalized.
ComplexMatrix haar_block(std::size_t m, std::size_t n, std::size_t k, Rng& rng) {
  const ComplexMatrix w = haar_columns(m, n, rng);
  ComplexMatrix v(n, k);
  auto e = v.mutable_entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) e[i * k + j] = w(j, i);
  return v;
}

ComplexMatrix symmetric_square(const ComplexMatrix& x) {
  const auto& kern = kernels::active();
  const std::size_t n = x.rows();
  ComplexMatrix out(n, n);
  auto e = out.mutable_entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const cplx v = kern.dotu(x.row(i).data(), x.row(j).data(), x.cols());
      e[i * n + j] = v;
      e[j * n + i] = v;
    }
  out.set_flags(ComplexMatrix::kSymmetric);
  return out;
}

std::size_t bin_of(double v, double hi, std::size_t bins) {
  if (!(v > 0.0)) return 0;
  const auto b = std::size_t(v / hi * double(bins));
  return std::min(b, bins - 1);
}

// Per-draw spectra, draw i seeded by derive_seed(seed, i).
std::vector<std::vector<double>> draw_spectra(const EnsembleSpec& spec, std::size_t samples, Seed seed,
                                              unsigned threads) {
  validate(spec);
  std::vector<std::vector<double>> out(samples);
  auto work = [&](std::size_t i) {
    Rng rng(derive_seed(seed.value, i));
    out[i] = singular_spectrum(sample_ensemble(spec, rng));
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(samples, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < samples; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < samples;) work(i);
      });
  }
  return out;
}

std::vector<double> flatten(const std::vector<std::vector<double>>& draws, std::size_t lo, std::size_t hi) {
  std::vector<double> v;
  for (std::size_t i = lo; i < hi; ++i) v.insert(v.end(), draws[i].begin(), draws[i].end());
  return v;
}

}  // namespace

std::string_view ensemble_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::haar_sub: return "haar_sub";
    case EnsembleKind::gaussian: return "gaussian";
    case EnsembleKind::coe_sub: return "coe_sub";
    case EnsembleKind::gaussian_sym: return "gaussian_sym";
  }
  return "?";
}

EnsembleKind ensemble_from_name(std::string_view name) {
  for (EnsembleKind k : {EnsembleKind::haar_sub, EnsembleKind::gaussian, EnsembleKind::coe_sub,
                         EnsembleKind::gaussian_sym})
    if (ensemble_name(k) == name) return k;
  throw ParameterError("unknown ensemble '" + std::string(name) + "'");
}

void validate(const EnsembleSpec& spec) {
  if (spec.M == 0 || spec.N == 0 || spec.K == 0) throw ParameterError("ensemble needs M, N, K >= 1");
  if (is_sub_kind(spec.kind) && (spec.N > spec.K || spec.K > spec.M))
    throw ParameterError("sub-matrix ensembles need N <= K <= M");
}

ComplexMatrix sample_ensemble(const EnsembleSpec& spec, Rng& rng) {
  validate(spec);
  const double var = 1.0 / double(spec.M);
  switch (spec.kind) {
    case EnsembleKind::haar_sub: return haar_block(spec.M, spec.N, spec.K, rng);
    case EnsembleKind::gaussian: return ginibre(spec.N, spec.K, var, rng);
    case EnsembleKind::coe_sub: return symmetric_square(haar_block(spec.M, spec.N, spec.K, rng));
    case EnsembleKind::gaussian_sym: return symmetric_square(ginibre(spec.N, spec.K, var, rng));
  }
  throw ParameterError("unknown ensemble kind");
}

ComplexMatrix sample_ensemble(const EnsembleSpec& spec, Seed seed) {
  Rng rng(seed);
  return sample_ensemble(spec, rng);
}

std::vector<double> singular_spectrum(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  Eigen::MatrixXcd m(Eigen::Index(a.rows()), Eigen::Index(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = a(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> uniform_edges(double hi, std::size_t bins) {
  if (bins == 0) throw ParameterError("need at least one bin");
  if (!(hi > 0.0)) hi = 1.0;
  std::vector<double> e(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) e[i] = hi * double(i) / double(bins);
  e.back() = hi;
  return e;
}

SpectrumHistogram make_histogram(std::span<const double> values, std::span<const double> edges,
                                 std::size_t sample_count) {
  if (edges.size() < 2) throw ParameterError("histogram needs at least two edges");
  const std::size_t bins = edges.size() - 1;
  const double hi = edges.back();
  SpectrumHistogram h;
  h.bin_edges.assign(edges.begin(), edges.end());
  h.masses.assign(bins, 0.0);
  h.sample_count = sample_count;
  if (values.empty()) return h;
  for (double v : values) h.masses[bin_of(v, hi, bins)] += 1.0;
  for (double& x : h.masses) x /= double(values.size());
  return h;
}

double spectra_tv_distance(const SpectrumHistogram& a, const SpectrumHistogram& b) {
  if (a.bin_edges != b.bin_edges || a.masses.size() != b.masses.size())
    throw ContractViolation("TV distance needs histograms over identical bin edges");
  double s = 0.0;
  for (std::size_t i = 0; i < a.masses.size(); ++i) s += std::abs(a.masses[i] - b.masses[i]);
  return std::min(1.0, 0.5 * s);
}

std::vector<double> pooled_spectrum(const EnsembleSpec& spec, std::size_t samples, Seed seed, unsigned threads) {
  return flatten(draw_spectra(spec, samples, seed, threads), 0, samples);
}

SpectraComparison compare_spectra(const EnsembleSpec& first, const EnsembleSpec& second, std::size_t samples,
                                  std::size_t bins, Seed seed, unsigned threads) {
  const auto da = draw_spectra(first, samples, Seed{derive_seed(seed.value, 1)}, threads);
  const auto db = draw_spectra(second, samples, Seed{derive_seed(seed.value, 2)}, threads);
  const auto va = flatten(da, 0, samples);
  const auto vb = flatten(db, 0, samples);
  double hi = 0.0;
  for (double v : va) hi = std::max(hi, v);
  for (double v : vb) hi = std::max(hi, v);
  const auto edges = uniform_edges(hi, bins);

  SpectraComparison cmp;
  cmp.first = make_histogram(va, edges, samples);
  cmp.second = make_histogram(vb, edges, samples);
  cmp.tv = spectra_tv_distance(cmp.first, cmp.second);
  if (samples >= 2) {
    const std::size_t half = samples / 2;
    auto split_tv = [&](const std::vector<std::vector<double>>& d) {
      const auto lo = flatten(d, 0, half);
      const auto up = flatten(d, half, 2 * half);
      return spectra_tv_distance(make_histogram(lo, edges, half), make_histogram(up, edges, half));
    };
    cmp.noise_floor = 0.5 * (split_tv(da) + split_tv(db));
  }
  return cmp;
}

std::vector<ScanRow> hiding_scan(std::span<const std::pair<EnsembleSpec, EnsembleSpec>> grid, std::size_t samples,
                                 std::size_t bins, Seed seed, unsigned threads) {
  std::vector<ScanRow> rows;
  if (samples == 0) return rows;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& [a, b] = grid[g];
    const auto cmp = compare_spectra(a, b, samples, bins, Seed{derive_seed(seed.value, 1000 + g)}, threads);
    rows.push_back({a.M, a.N, a.K, samples, bins, cmp.tv, cmp.noise_floor, a.N * a.N > a.M});
  }
  return rows;
}

void write_scan_csv(std::ostream& os, std::span<const ScanRow> rows) {
  os << "M,N,K,samples,bins,tv,noise_floor,collision_warning\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%zu,%zu,%.17g,%.17g,%d\n", r.M, r.N, r.K, r.samples, r.bins, r.tv,
                  r.noise_floor, int(r.collision_warning));
    os << buf;
  }
}

void write_spectra_csv(std::ostream& os, const SpectraComparison& cmp) {
  os << "bin_lo,bin_hi,mass_coe,mass_gsym\n";
  char buf[256];
  for (std::size_t i = 0; i < cmp.first.masses.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", cmp.first.bin_edges[i], cmp.first.bin_edges[i + 1],
                  cmp.first.masses[i], cmp.second.masses[i]);
    os << buf;
  }
}

}  // namespace hdgbs
