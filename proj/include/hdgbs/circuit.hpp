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
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "hdgbs/matrix.hpp"
#include "hdgbs/rng.hpp"

namespace hdgbs {

/// Beam-splitter V (2x2 unitary) acting on modes i < j.
struct Gate {
  std::size_t i = 0;
  std::size_t j = 0;
  ComplexMatrix v;
};

/// An (r, a, D, C) delay-line instance: M = a^D modes coupled at ranges
/// 1, a, ..., a^{D-1}, repeated for C cycles.
struct GbsInstance {
  /// One entry (broadcast) or one per mode.
  std::vector<double> r;
  std::size_t a = 0;
  std::size_t dim = 0;
  std::size_t cycles = 0;
  std::uint64_t seed = 0;
  std::vector<Gate> gates;
  ComplexMatrix unitary;

  std::size_t modes() const { return unitary.rows(); }
  bool scalar_squeezing() const { return r.size() == 1; }
  std::vector<double> squeezing() const;
};

struct BuildOptions {
  /// Use one Haar V per (cycle, range) layer instead of one per gate.
  bool share_layer_unitary = false;
  std::size_t mode_limit = 1u << 14;
};

std::size_t int_pow(std::size_t base, std::size_t exp);

/// C * sum_{d<D} (a^D - a^d)
std::size_t expected_gate_count(std::size_t a, std::size_t dim, std::size_t cycles);

/// Gates are generated cycle by cycle, range by range, with i ascending, and
/// applied to the identity in that order (U = B_last ... B_first).
GbsInstance build_instance(double r, std::size_t a, std::size_t dim, std::size_t cycles, Seed seed,
                           const BuildOptions& opts = {});
GbsInstance build_instance(std::vector<double> r, std::size_t a, std::size_t dim, std::size_t cycles, Seed seed,
                           const BuildOptions& opts = {});

/// tanh(r) U U^T; requires scalar squeezing.
ComplexMatrix adjacency(const GbsInstance& inst);
/// U diag(tanh r_i) U^T
ComplexMatrix adjacency_general(const ComplexMatrix& u, std::span<const double> r);

enum class LossMode { copies, recirculator };

struct LossBudget {
  double eta_bs = 1.0;
  double eta_unit = 1.0;
  double eta_recirc = 1.0;
  LossMode mode = LossMode::copies;
};

struct LossReport {
  /// eta_bs^{C D} eta_unit^{C (a^D - 1)/(a - 1)} [* eta_recirc^L]
  double transmission = 1.0;
  /// Same with the path length replaced by a^{D-1}.
  double approx_transmission = 1.0;
  double path_length = 0.0;
  double recirc_length = 0.0;
};

LossReport loss_budget(std::size_t a, std::size_t dim, std::size_t cycles, const LossBudget& budget);

/// C * sum_{d<D} a^d. Entries U(row, col) with col - row beyond this are zero.
std::size_t light_cone_band(std::size_t a, std::size_t dim, std::size_t cycles);

nlohmann::json instance_to_json(const GbsInstance& inst);
GbsInstance instance_from_json(const nlohmann::json& j);

}  // namespace hdgbs
