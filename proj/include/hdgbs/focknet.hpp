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
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hdgbs/circuit.hpp"
#include "hdgbs/matrix.hpp"
#include "hdgbs/pattern.hpp"
#include "hdgbs/rng.hpp"

namespace hdgbs {

/// Dense tensor over Fock levels. Values are row-major in `labels` order
/// (last label fastest).
struct FockTensor {
  std::vector<int> labels;
  std::vector<std::size_t> dims;
  std::vector<cplx> values;

  std::size_t rank() const { return labels.size(); }
  std::size_t element_count() const;
};

struct TensorNetwork {
  std::vector<FockTensor> tensors;
  /// Labels left uncontracted (one per mode for an open network).
  std::vector<int> open_labels;
  std::size_t cutoff = 0;

  /// Every shared label appears on exactly two tensors with equal dimension;
  /// open labels appear exactly once. Throws ContractViolation otherwise.
  void validate() const;
};

/// Pairwise order over SSA ids: inputs are 0..T-1, step k creates id T+k.
struct ContractionPlan {
  std::vector<std::pair<std::size_t, std::size_t>> order;
  /// Sum over steps of the product of all dimensions involved (multiply-adds).
  double est_flops = 0.0;
  /// Largest tensor (input or intermediate) the plan ever holds.
  double max_tensor_elems = 0.0;
};

/// |r> truncated to `cutoff` levels: amp(2k) = (-tanh r)^k sqrt((2k)!) / (2^k k! sqrt(cosh r)).
FockTensor squeezed_vacuum_tensor(double r, std::size_t cutoff, int label = 0);

/// <m1 m2| B(V) |n1 n2> with labels (out1, out2, in1, in2). V acts on creation
/// operators as a_in^dag -> sum_out V(out, in) a_out^dag.
FockTensor beamsplitter_tensor(const ComplexMatrix& v, std::size_t cutoff, int out1 = 0, int out2 = 1, int in1 = 2,
                               int in2 = 3);

/// One squeezer per mode, one beam-splitter per gate in gate order, and Fock
/// basis vectors on the outputs when a pattern is given.
TensorNetwork build_network(const GbsInstance& inst, std::size_t cutoff,
                            const std::optional<OutcomePattern>& pattern = std::nullopt);

/// Best of `trials` randomized greedy searches; trial t uses a generator
/// derived from (seed, t) and trial 0 is the noiseless greedy.
ContractionPlan contraction_cost(const TensorNetwork& net, std::size_t trials, Seed seed);

/// Replays `plan` symbolically and returns (est_flops, max_tensor_elems).
ContractionPlan replay_cost(const TensorNetwork& net, const std::vector<std::pair<std::size_t, std::size_t>>& order);

struct ContractOptions {
  double memory_guard = 1e8;
};

struct ContractStats {
  /// Multiply-adds executed.
  double flops = 0.0;
  double max_tensor_elems = 0.0;
};

/// Full contraction; the result carries the open labels (rank 0 when closed).
FockTensor contract_to_tensor(const TensorNetwork& net, const ContractionPlan& plan,
                              const ContractOptions& opts = {}, ContractStats* stats = nullptr);

/// Amplitude of a closed network.
cplx contract(const TensorNetwork& net, const ContractionPlan& plan, const ContractOptions& opts = {},
              ContractStats* stats = nullptr);

nlohmann::json plan_to_json(const ContractionPlan& plan);
ContractionPlan plan_from_json(const nlohmann::json& j);

}  // namespace hdgbs
