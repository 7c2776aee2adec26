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

#include "hdgbs/circuit.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hdgbs/error.hpp"
#include "hdgbs/kernels.hpp"
#include "hdgbs/random_matrix.hpp"

namespace hdgbs {

std::vector<double> GbsInstance::squeezing() const {
  if (r.size() == 1) return std::vector<double>(modes(), r.front());
  return r;
}

std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base)
      throw ResourceError("a^D overflows the mode counter");
    out *= base;
  }
  return out;
}

std::size_t expected_gate_count(std::size_t a, std::size_t dim, std::size_t cycles) {
  const std::size_t m = int_pow(a, dim);
  std::size_t per_cycle = 0;
  for (std::size_t d = 0; d < dim; ++d) per_cycle += m - int_pow(a, d);
  return cycles * per_cycle;
}

GbsInstance build_instance(std::vector<double> r, std::size_t a, std::size_t dim, std::size_t cycles, Seed seed,
                           const BuildOptions& opts) {
  if (a < 2) throw ParameterError("lattice size a must be >= 2");
  if (dim < 1) throw ParameterError("lattice dimension D must be >= 1");
  if (cycles < 1) throw ParameterError("cycle count C must be >= 1");
  std::size_t m = 1;
  for (std::size_t d = 0; d < dim; ++d) {
    if (m > opts.mode_limit / a)
      throw ResourceError("a^D exceeds the mode limit " + std::to_string(opts.mode_limit));
    m *= a;
  }
  if (r.empty() || (r.size() != 1 && r.size() != m))
    throw DimensionError("squeezing must be a scalar or have one entry per mode");
  for (double x : r)
    if (!(x >= 0.0) || !std::isfinite(x)) throw ParameterError("squeezing parameters must be finite and >= 0");

  GbsInstance inst;
  inst.r = std::move(r);
  inst.a = a;
  inst.dim = dim;
  inst.cycles = cycles;
  inst.seed = seed.value;
  inst.gates.reserve(expected_gate_count(a, dim, cycles));

  ComplexMatrix u = ComplexMatrix::identity(m);
  const auto& kern = kernels::active();
  auto rows = u.mutable_entries();
  Rng rng(seed);
  for (std::size_t c = 0; c < cycles; ++c) {
    for (std::size_t d = 0; d < dim; ++d) {
      const std::size_t tau = int_pow(a, d);
      ComplexMatrix shared;
      if (opts.share_layer_unitary) shared = haar_unitary(2, rng);
      for (std::size_t i = 0; i + tau < m; ++i) {
        ComplexMatrix v = opts.share_layer_unitary ? shared : haar_unitary(2, rng);
        kern.rot2(v.entries().data(), rows.data() + i * m, rows.data() + (i + tau) * m, m);
        inst.gates.push_back({i, i + tau, std::move(v)});
      }
    }
  }
  u.assert_unitary();
  inst.unitary = std::move(u);
  return inst;
}

GbsInstance build_instance(double r, std::size_t a, std::size_t dim, std::size_t cycles, Seed seed,
                           const BuildOptions& opts) {
  return build_instance(std::vector<double>{r}, a, dim, cycles, seed, opts);
}

ComplexMatrix adjacency_general(const ComplexMatrix& u, std::span<const double> r) {
  if (!u.square()) throw DimensionError("adjacency needs a square unitary");
  const std::size_t m = u.rows();
  if (r.size() != m)
    throw DimensionError("squeezing vector length " + std::to_string(r.size()) + " != " + std::to_string(m));
  for (double x : r)
    if (!(x >= 0.0)) throw ParameterError("squeezing parameters must be >= 0");

  std::vector<cplx> scaled(u.entries().begin(), u.entries().end());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) scaled[i * m + k] *= std::tanh(r[k]);

  const auto& kern = kernels::active();
  ComplexMatrix a(m, m);
  auto e = a.mutable_entries();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const cplx v = kern.dotu(scaled.data() + i * m, u.row(j).data(), m);
      e[i * m + j] = v;
      e[j * m + i] = v;
    }
  a.set_flags(ComplexMatrix::kSymmetric);
  return a;
}

ComplexMatrix adjacency(const GbsInstance& inst) {
  if (!inst.scalar_squeezing()) throw ContractViolation("adjacency needs scalar squeezing; use adjacency_general");
  const std::size_t m = inst.modes();
  const double t = std::tanh(inst.r.front());
  const auto& kern = kernels::active();
  const auto& u = inst.unitary;
  ComplexMatrix a(m, m);
  auto e = a.mutable_entries();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const cplx v = t * kern.dotu(u.row(i).data(), u.row(j).data(), m);
      e[i * m + j] = v;
      e[j * m + i] = v;
    }
  a.set_flags(ComplexMatrix::kSymmetric);
  return a;
}

LossReport loss_budget(std::size_t a, std::size_t dim, std::size_t cycles, const LossBudget& budget) {
  if (a < 2 || dim < 1 || cycles < 1) throw ParameterError("loss budget needs a >= 2, D >= 1, C >= 1");
  auto check = [](double eta, const char* name) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError(std::string(name) + " must lie in (0, 1]");
  };
  check(budget.eta_bs, "eta_bs");
  check(budget.eta_unit, "eta_unit");
  check(budget.eta_recirc, "eta_recirc");

  const double ad = std::pow(double(a), double(dim));
  const double path = (ad - 1.0) / (double(a) - 1.0);
  const double approx_path = std::pow(double(a), double(dim) - 1.0);
  const double c = double(cycles);
  const double splitters = std::pow(budget.eta_bs, c * double(dim));

  LossReport rep;
  rep.path_length = path;
  rep.transmission = splitters * std::pow(budget.eta_unit, c * path);
  rep.approx_transmission = splitters * std::pow(budget.eta_unit, c * approx_path);
  if (budget.mode == LossMode::recirculator) {
    rep.recirc_length = ad - path;
    const double recirc = std::pow(budget.eta_recirc, rep.recirc_length);
    rep.transmission *= recirc;
    rep.approx_transmission *= recirc;
  }
  return rep;
}

std::size_t light_cone_band(std::size_t a, std::size_t dim, std::size_t cycles) {
  std::size_t per_cycle = 0;
  for (std::size_t d = 0; d < dim; ++d) per_cycle += int_pow(a, d);
  return cycles * per_cycle;
}

nlohmann::json instance_to_json(const GbsInstance& inst) {
  nlohmann::json j;
  if (inst.scalar_squeezing())
    j["r"] = inst.r.front();
  else
    j["r"] = inst.r;
  j["a"] = inst.a;
  j["D"] = inst.dim;
  j["C"] = inst.cycles;
  j["seed"] = inst.seed;
  j["unitary"] = matrix_to_json(inst.unitary);
  auto gates = nlohmann::json::array();
  for (const Gate& g : inst.gates) gates.push_back({{"i", g.i}, {"j", g.j}, {"v", matrix_to_json(g.v)}});
  j["gates"] = std::move(gates);
  return j;
}

GbsInstance instance_from_json(const nlohmann::json& j) {
  for (const char* key : {"r", "a", "D", "C", "seed", "unitary", "gates"})
    if (!j.contains(key)) throw ContractViolation(std::string("instance JSON missing '") + key + "'");
  GbsInstance inst;
  if (j.at("r").is_array())
    inst.r = j.at("r").get<std::vector<double>>();
  else
    inst.r = {j.at("r").get<double>()};
  inst.a = j.at("a").get<std::size_t>();
  inst.dim = j.at("D").get<std::size_t>();
  inst.cycles = j.at("C").get<std::size_t>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.unitary = matrix_from_json(j.at("unitary"));
  const std::size_t m = int_pow(inst.a, inst.dim);
  if (inst.unitary.rows() != m || inst.unitary.cols() != m)
    throw DimensionError("instance unitary is not a^D x a^D");
  if (inst.r.size() != 1 && inst.r.size() != m) throw DimensionError("instance squeezing length mismatch");
  inst.unitary.assert_unitary();
  for (const auto& g : j.at("gates")) {
    Gate gate{g.at("i").get<std::size_t>(), g.at("j").get<std::size_t>(), matrix_from_json(g.at("v"))};
    if (gate.i >= m || gate.j >= m || gate.v.rows() != 2 || gate.v.cols() != 2)
      throw ContractViolation("malformed gate in instance JSON");
    inst.gates.push_back(std::move(gate));
  }
  return inst;
}

}  // namespace hdgbs
