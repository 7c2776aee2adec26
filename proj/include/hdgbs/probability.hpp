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
#include <vector>

#include "hdgbs/circuit.hpp"
#include "hdgbs/hafnian.hpp"
#include "hdgbs/matrix.hpp"
#include "hdgbs/pattern.hpp"
#include "hdgbs/rng.hpp"

namespace hdgbs {

/// Mass function over the total photon number 0..n_max, held as logs.
struct PhotonNumberDist {
  std::vector<double> log_probs;
  /// 1 - sum of the stored mass (clamped at 0): the mass beyond n_max.
  double truncated_mass = 0.0;
  std::size_t modes = 0;
  std::vector<double> r;
  double eta = 1.0;

  std::size_t n_max() const { return log_probs.empty() ? 0 : log_probs.size() - 1; }
  double prob(std::size_t n) const;
  std::vector<double> probs() const;
  double total_mass() const;
  double mean() const;
  double variance() const;
  std::size_t argmax() const;
};

/// |Haf(A_{n,n})|^2 / prod(n_j! cosh r_j), evaluated in log space.
double outcome_probability(const ComplexMatrix& a, std::span<const double> r, const OutcomePattern& n,
                           const HafnianOptions& opts = {});
double log_outcome_probability(const ComplexMatrix& a, std::span<const double> r, const OutcomePattern& n,
                               const HafnianOptions& opts = {});

/// First K modes squeezed at r, rest vacuum, collision-free n:
/// tanh^N r / cosh^K r * |Haf((U I_K U^T)_{n,n})|^2.
double collision_free_probability(const ComplexMatrix& u, std::size_t k, double r, const OutcomePattern& n,
                                  const HafnianOptions& opts = {});

/// K sinh^2 r
double mean_total_photons(std::size_t k, double r);

/// Single-mode squeezed vacuum: p(2k) = (2k)! tanh^{2k} r / (4^k (k!)^2 cosh r).
PhotonNumberDist squeezed_vacuum_dist(double r, std::size_t n_max);

/// M identical squeezers under uniform transmission eta, closed form with
/// Gauss hypergeometric factors.
PhotonNumberDist lossy_total_dist_closed(std::size_t modes, double r, double eta, std::size_t n_max);

/// Per-mode squeezed vacuum, binomially thinned by eta, convolved over modes.
PhotonNumberDist total_dist_convolution(std::span<const double> r, double eta, std::size_t n_max);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments photon_moments(std::size_t modes, double r, double eta);
Moments photon_moments(std::span<const double> r, double eta);

/// 2 floor((M/2 - 1) sinh^2 r)
std::size_t most_probable_even(std::size_t modes, double r);

struct SampleSet {
  std::vector<OutcomePattern> samples;
  /// Probability mass outside the enumerated support N <= n_max.
  double truncated_mass = 0.0;
  std::size_t support_size = 0;
};

struct SamplerOptions {
  double max_patterns = 1e7;
  HafnianOptions hafnian;
};

/// Exact sampler for desk-scale instances: enumerates every pattern with
/// N <= n_max, renormalizes, and draws i.i.d. samples.
SampleSet exact_sample(const GbsInstance& inst, std::size_t n_max, std::size_t count, Seed seed,
                       const SamplerOptions& opts = {});

/// CSV with header `n,prob,log_prob`.
void write_dist_csv(std::ostream& os, const PhotonNumberDist& dist);

}  // namespace hdgbs
