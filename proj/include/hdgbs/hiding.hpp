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
#include <ostream>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hdgbs/matrix.hpp"
#include "hdgbs/rng.hpp"

namespace hdgbs {

enum class EnsembleKind { haar_sub, gaussian, coe_sub, gaussian_sym };

std::string_view ensemble_name(EnsembleKind kind);
EnsembleKind ensemble_from_name(std::string_view name);

/// Gaussian kinds use variance 1/M; sub-matrix kinds need N <= K <= M.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::coe_sub;
  std::size_t M = 0;
  std::size_t N = 0;
  std::size_t K = 0;
};

void validate(const EnsembleSpec& spec);

ComplexMatrix sample_ensemble(const EnsembleSpec& spec, Rng& rng);
ComplexMatrix sample_ensemble(const EnsembleSpec& spec, Seed seed);

/// Descending singular values, length min(rows, cols).
std::vector<double> singular_spectrum(const ComplexMatrix& a);

struct SpectrumHistogram {
  std::vector<double> bin_edges;
  std::vector<double> masses;
  std::size_t sample_count = 0;
};

std::vector<double> uniform_edges(double hi, std::size_t bins);
SpectrumHistogram make_histogram(std::span<const double> values, std::span<const double> edges,
                                 std::size_t sample_count);

/// 1/2 sum |a_i - b_i|; throws on mismatched edges.
double spectra_tv_distance(const SpectrumHistogram& a, const SpectrumHistogram& b);

/// Singular values of `samples` independent draws pooled together. Draw i uses
/// a generator derived from (seed, i), so the output does not depend on
/// `threads`.
std::vector<double> pooled_spectrum(const EnsembleSpec& spec, std::size_t samples, Seed seed, unsigned threads = 1);

struct SpectraComparison {
  SpectrumHistogram first;
  SpectrumHistogram second;
  double tv = 0.0;
  /// Mean of the split-half TV of each ensemble against itself.
  double noise_floor = 0.0;
};

/// Bins both pooled spectra uniformly on [0, max observed value].
SpectraComparison compare_spectra(const EnsembleSpec& first, const EnsembleSpec& second, std::size_t samples,
                                  std::size_t bins, Seed seed, unsigned threads = 1);

struct ScanRow {
  std::size_t M = 0;
  std::size_t N = 0;
  std::size_t K = 0;
  std::size_t samples = 0;
  std::size_t bins = 0;
  double tv = 0.0;
  double noise_floor = 0.0;
  /// N^2 > M: outside the collision-free regime the comparison targets.
  bool collision_warning = false;
};

std::vector<ScanRow> hiding_scan(std::span<const std::pair<EnsembleSpec, EnsembleSpec>> grid, std::size_t samples,
                                 std::size_t bins, Seed seed, unsigned threads = 1);

void write_scan_csv(std::ostream& os, std::span<const ScanRow> rows);
/// Columns bin_lo,bin_hi,mass_coe,mass_gsym.
void write_spectra_csv(std::ostream& os, const SpectraComparison& cmp);

}  // namespace hdgbs
