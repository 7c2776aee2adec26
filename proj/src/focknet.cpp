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

#include "hdgbs/focknet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>

#include "hdgbs/error.hpp"
#include "hdgbs/kernels.hpp"

namespace hdgbs {

namespace {

using Order = std::vector<std::pair<std::size_t, std::size_t>>;

double product_of(const std::vector<std::size_t>& dims) {
  double p = 1.0;
  for (std::size_t d : dims) p *= double(d);
  return p;
}

// Symbolic tensor: sorted labels with their dimensions.
struct Shape {
  std::vector<int> labels;
  std::vector<std::size_t> dims;

  double size() const { return product_of(dims); }

  double log2_size() const {
    double s = 0.0;
    for (std::size_t d : dims) s += std::log2(double(d));
    return s;
  }
};

Shape shape_of(const FockTensor& t) {
  std::vector<std::size_t> perm(t.rank());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return t.labels[x] < t.labels[y]; });
  Shape s;
  for (std::size_t i : perm) {
    s.labels.push_back(t.labels[i]);
    s.dims.push_back(t.dims[i]);
  }
  return s;
}

struct StepShape {
  Shape out;
  double flops = 0.0;  // product of the dimensions over the union of labels
};

StepShape combine(const Shape& a, const Shape& b) {
  StepShape st;
  st.flops = 1.0;
  std::size_t i = 0, j = 0;
  while (i < a.labels.size() || j < b.labels.size()) {
    if (j == b.labels.size() || (i < a.labels.size() && a.labels[i] < b.labels[j])) {
      st.out.labels.push_back(a.labels[i]);
      st.out.dims.push_back(a.dims[i]);
      st.flops *= double(a.dims[i++]);
    } else if (i == a.labels.size() || b.labels[j] < a.labels[i]) {
      st.out.labels.push_back(b.labels[j]);
      st.out.dims.push_back(b.dims[j]);
      st.flops *= double(b.dims[j++]);
    } else {
      st.flops *= double(a.dims[i]);
      ++i;
      ++j;
    }
  }
  return st;
}

struct Candidate {
  double score;
  std::size_t a;
  std::size_t b;
  bool operator>(const Candidate& o) const { return std::tie(score, a, b) > std::tie(o.score, o.a, o.b); }
};

// One greedy pass. noise == 0 gives the deterministic baseline.
ContractionPlan greedy_pass(const std::vector<Shape>& inputs, double noise, Rng& rng) {
  std::vector<Shape> nodes = inputs;
  std::vector<char> alive(nodes.size(), 1);
  std::unordered_map<int, std::vector<std::size_t>> holders;
  for (std::size_t t = 0; t < nodes.size(); ++t)
    for (int l : nodes[t].labels) holders[l].push_back(t);

  ContractionPlan plan;
  for (const Shape& s : nodes) plan.max_tensor_elems = std::max(plan.max_tensor_elems, s.size());

  auto gumbel = [&] { return noise > 0.0 ? -noise * std::log(-std::log(std::max(rng.uniform(), 1e-300))) : 0.0; };
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  auto push = [&](std::size_t x, std::size_t y) {
    if (x > y) std::swap(x, y);
    queue.push({combine(nodes[x], nodes[y]).out.log2_size() + gumbel(), x, y});
  };

  {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [label, ids] : holders)
      if (ids.size() == 2) pairs.emplace_back(std::min(ids[0], ids[1]), std::max(ids[0], ids[1]));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (auto [x, y] : pairs) push(x, y);
  }

  auto contract_pair = [&](std::size_t x, std::size_t y) {
    StepShape st = combine(nodes[x], nodes[y]);
    plan.est_flops += st.flops;
    plan.max_tensor_elems = std::max(plan.max_tensor_elems, st.out.size());
    plan.order.emplace_back(x, y);
    alive[x] = alive[y] = 0;
    const std::size_t id = nodes.size();
    for (int l : nodes[x].labels)
      std::erase(holders[l], x);
    for (int l : nodes[y].labels)
      std::erase(holders[l], y);
    nodes.push_back(std::move(st.out));
    alive.push_back(1);
    std::vector<std::size_t> nbrs;
    for (int l : nodes[id].labels) {
      auto& h = holders[l];
      for (std::size_t o : h) nbrs.push_back(o);
      h.push_back(id);
    }
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    return std::make_pair(id, nbrs);
  };

  while (!queue.empty()) {
    const Candidate c = queue.top();
    queue.pop();
    if (!alive[c.a] || !alive[c.b]) continue;
    auto [id, nbrs] = contract_pair(c.a, c.b);
    for (std::size_t o : nbrs) push(o, id);
  }

  // Disconnected components: outer products, smallest first.
  using Sized = std::pair<double, std::size_t>;
  std::priority_queue<Sized, std::vector<Sized>, std::greater<>> rest;
  for (std::size_t t = 0; t < nodes.size(); ++t)
    if (alive[t]) rest.emplace(nodes[t].log2_size(), t);
  while (rest.size() > 1) {
    const std::size_t x = rest.top().second;
    rest.pop();
    const std::size_t y = rest.top().second;
    rest.pop();
    auto [id, nbrs] = contract_pair(std::min(x, y), std::max(x, y));
    rest.emplace(nodes[id].log2_size(), id);
  }
  return plan;
}

bool better(const ContractionPlan& a, const ContractionPlan& b) {
  if (a.est_flops != b.est_flops) return a.est_flops < b.est_flops;
  return a.max_tensor_elems < b.max_tensor_elems;
}

// Moves the axes of t into the order given by `labels`.
FockTensor permuted(const FockTensor& t, const std::vector<int>& labels) {
  const std::size_t rank = t.rank();
  std::vector<std::size_t> src_stride(rank, 1);
  for (std::size_t k = rank; k-- > 1;) src_stride[k - 1] = src_stride[k] * t.dims[k];
  FockTensor out;
  out.labels = labels;
  std::vector<std::size_t> stride(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const auto it = std::find(t.labels.begin(), t.labels.end(), labels[k]);
    const auto pos = std::size_t(it - t.labels.begin());
    out.dims.push_back(t.dims[pos]);
    stride[k] = src_stride[pos];
  }
  out.values.resize(t.values.size());
  if (out.labels == t.labels) {
    out.values = t.values;
    return out;
  }
  std::vector<std::size_t> idx(rank, 0);
  std::size_t src = 0;
  for (std::size_t n = 0; n < out.values.size(); ++n) {
    out.values[n] = t.values[src];
    for (std::size_t k = rank; k-- > 0;) {
      if (++idx[k] < out.dims[k]) {
        src += stride[k];
        break;
      }
      src -= stride[k] * (idx[k] - 1);
      idx[k] = 0;
    }
  }
  return out;
}

FockTensor contract_two(const FockTensor& a, const FockTensor& b, double& flops) {
  std::vector<int> shared, free_a, free_b;
  for (int l : a.labels)
    (std::find(b.labels.begin(), b.labels.end(), l) != b.labels.end() ? shared : free_a).push_back(l);
  for (int l : b.labels)
    if (std::find(a.labels.begin(), a.labels.end(), l) == a.labels.end()) free_b.push_back(l);

  std::vector<int> order_a = free_a, order_b = free_b;
  order_a.insert(order_a.end(), shared.begin(), shared.end());
  order_b.insert(order_b.end(), shared.begin(), shared.end());
  const FockTensor pa = permuted(a, order_a);
  const FockTensor pb = permuted(b, order_b);

  std::size_t inner = 1;
  for (std::size_t k = free_a.size(); k < pa.rank(); ++k) inner *= pa.dims[k];
  const std::size_t rows = pa.values.size() / std::max<std::size_t>(inner, 1);
  const std::size_t cols = pb.values.size() / std::max<std::size_t>(inner, 1);

  FockTensor out;
  out.labels = free_a;
  out.labels.insert(out.labels.end(), free_b.begin(), free_b.end());
  out.dims.assign(pa.dims.begin(), pa.dims.begin() + std::ptrdiff_t(free_a.size()));
  out.dims.insert(out.dims.end(), pb.dims.begin(), pb.dims.begin() + std::ptrdiff_t(free_b.size()));
  out.values.assign(rows * cols, cplx{});
  const auto& kern = kernels::active();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out.values[i * cols + j] = kern.dotu(pa.values.data() + i * inner, pb.values.data() + j * inner, inner);
  flops += double(rows) * double(cols) * double(inner);
  return out;
}

}  // namespace

std::size_t FockTensor::element_count() const {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

void TensorNetwork::validate() const {
  std::map<int, std::vector<std::size_t>> dims_of;
  for (const FockTensor& t : tensors) {
    if (t.labels.size() != t.dims.size()) throw ContractViolation("tensor labels and dims differ in length");
    if (t.values.size() != t.element_count()) throw ContractViolation("tensor value count != product of dims");
    std::vector<int> sorted = t.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ContractViolation("tensor repeats a label");
    for (std::size_t k = 0; k < t.rank(); ++k) dims_of[t.labels[k]].push_back(t.dims[k]);
  }
  std::vector<int> open = open_labels;
  std::sort(open.begin(), open.end());
  for (const auto& [label, ds] : dims_of) {
    const bool is_open = std::binary_search(open.begin(), open.end(), label);
    if (is_open) {
      if (ds.size() != 1) throw ContractViolation("open label " + std::to_string(label) + " is shared");
    } else if (ds.size() != 2) {
      throw ContractViolation("label " + std::to_string(label) + " appears " + std::to_string(ds.size()) +
                              " times");
    } else if (ds[0] != ds[1]) {
      throw ContractViolation("label " + std::to_string(label) + " joins unequal dimensions");
    }
  }
  for (int l : open)
    if (!dims_of.count(l)) throw ContractViolation("open label " + std::to_string(l) + " is not on any tensor");
}

FockTensor squeezed_vacuum_tensor(double r, std::size_t cutoff, int label) {
  if (cutoff == 0) throw ParameterError("cutoff must be >= 1");
  FockTensor t{{label}, {cutoff}, std::vector<cplx>(cutoff)};
  const double th = std::tanh(r);
  double amp = 1.0 / std::sqrt(std::cosh(r));
  for (std::size_t n = 0; n < cutoff; n += 2) {
    t.values[n] = amp;
    // amp(2k+2) / amp(2k) = -tanh r * sqrt((2k+1)(2k+2)) / (2k+2)
    amp *= -th * std::sqrt(double(n + 1) * double(n + 2)) / double(n + 2);
  }
  return t;
}

FockTensor beamsplitter_tensor(const ComplexMatrix& v, std::size_t cutoff, int out1, int out2, int in1, int in2) {
  if (cutoff == 0) throw ParameterError("cutoff must be >= 1");
  if (v.rows() != 2 || v.cols() != 2) throw DimensionError("beam-splitter needs a 2x2 matrix");
  if (!v.flagged_unitary() && unitarity_defect(v) > kUnitaryTol)
    throw ContractViolation("beam-splitter matrix is not unitary");
  const std::size_t c = cutoff;
  FockTensor t{{out1, out2, in1, in2}, {c, c, c, c}, std::vector<cplx>(c * c * c * c)};

  // pw[x][k] = v_x^k for the four entries v00, v10, v01, v11.
  const cplx ent[4] = {v(0, 0), v(1, 0), v(0, 1), v(1, 1)};
  std::vector<std::vector<cplx>> pw(4, std::vector<cplx>(c));
  for (int x = 0; x < 4; ++x) {
    pw[x][0] = 1.0;
    for (std::size_t k = 1; k < c; ++k) pw[x][k] = pw[x][k - 1] * ent[x];
  }
  std::vector<std::vector<double>> binom(c, std::vector<double>(c, 0.0));
  for (std::size_t n = 0; n < c; ++n) {
    binom[n][0] = binom[n][n] = 1.0;
    for (std::size_t k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
  }
  auto lfact = [](std::size_t n) { return std::lgamma(double(n) + 1.0); };

  std::vector<cplx> coef(2 * c);
  for (std::size_t n1 = 0; n1 < c; ++n1)
    for (std::size_t n2 = 0; n2 < c; ++n2) {
      // Coefficient of (a1^dag)^m1 (a2^dag)^(n1+n2-m1).
      std::fill(coef.begin(), coef.end(), cplx{});
      for (std::size_t p = 0; p <= n1; ++p) {
        const cplx left = binom[n1][p] * pw[0][p] * pw[1][n1 - p];
        for (std::size_t q = 0; q <= n2; ++q) coef[p + q] += left * binom[n2][q] * pw[2][q] * pw[3][n2 - q];
      }
      const std::size_t total = n1 + n2;
      for (std::size_t m1 = 0; m1 <= total && m1 < c; ++m1) {
        const std::size_t m2 = total - m1;
        if (m2 >= c) continue;
        const double norm = std::exp(0.5 * (lfact(m1) + lfact(m2) - lfact(n1) - lfact(n2)));
        t.values[((m1 * c + m2) * c + n1) * c + n2] = coef[m1] * norm;
      }
    }
  return t;
}

TensorNetwork build_network(const GbsInstance& inst, std::size_t cutoff, const std::optional<OutcomePattern>& pattern) {
  if (cutoff == 0) throw ParameterError("cutoff must be >= 1");
  const std::size_t m = inst.modes();
  if (pattern) {
    if (pattern->modes() != m)
      throw DimensionError("pattern length " + std::to_string(pattern->modes()) + " != " + std::to_string(m) +
                           " modes");
    for (unsigned k : pattern->counts)
      if (k >= cutoff)
        throw ParameterError("pattern level " + std::to_string(k) + " >= cutoff " + std::to_string(cutoff));
  }
  TensorNetwork net;
  net.cutoff = cutoff;
  const auto r = inst.squeezing();
  std::vector<int> wire(m);
  for (std::size_t k = 0; k < m; ++k) {
    wire[k] = int(k);
    net.tensors.push_back(squeezed_vacuum_tensor(r[k], cutoff, wire[k]));
  }
  int next = int(m);
  for (const Gate& g : inst.gates) {
    const int o1 = next++, o2 = next++;
    net.tensors.push_back(beamsplitter_tensor(g.v, cutoff, o1, o2, wire[g.i], wire[g.j]));
    wire[g.i] = o1;
    wire[g.j] = o2;
  }
  if (pattern) {
    for (std::size_t k = 0; k < m; ++k) {
      FockTensor e{{wire[k]}, {cutoff}, std::vector<cplx>(cutoff)};
      e.values[pattern->counts[k]] = 1.0;
      net.tensors.push_back(std::move(e));
    }
  } else {
    net.open_labels = wire;
  }
  return net;
}

ContractionPlan contraction_cost(const TensorNetwork& net, std::size_t trials, Seed seed) {
  if (trials == 0) throw ParameterError("trials must be >= 1");
  net.validate();
  std::vector<Shape> inputs;
  for (const FockTensor& t : net.tensors) inputs.push_back(shape_of(t));
  ContractionPlan best;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed.value, t));
    ContractionPlan p = greedy_pass(inputs, t == 0 ? 0.0 : 1.0, rng);
    if (t == 0 || better(p, best)) best = std::move(p);
  }
  return best;
}

ContractionPlan replay_cost(const TensorNetwork& net, const Order& order) {
  std::vector<Shape> nodes;
  for (const FockTensor& t : net.tensors) nodes.push_back(shape_of(t));
  std::vector<char> alive(nodes.size(), 1);
  ContractionPlan plan;
  plan.order = order;
  for (const Shape& s : nodes) plan.max_tensor_elems = std::max(plan.max_tensor_elems, s.size());
  for (auto [x, y] : order) {
    if (x == y || x >= nodes.size() || y >= nodes.size() || !alive[x] || !alive[y])
      throw ContractViolation("plan step (" + std::to_string(x) + ", " + std::to_string(y) +
                              ") refers to a missing tensor");
    StepShape st = combine(nodes[x], nodes[y]);
    plan.est_flops += st.flops;
    plan.max_tensor_elems = std::max(plan.max_tensor_elems, st.out.size());
    alive[x] = alive[y] = 0;
    nodes.push_back(std::move(st.out));
    alive.push_back(1);
  }
  if (std::count(alive.begin(), alive.end(), 1) != 1) throw ContractViolation("plan does not contract fully");
  return plan;
}

FockTensor contract_to_tensor(const TensorNetwork& net, const ContractionPlan& plan, const ContractOptions& opts,
                              ContractStats* stats) {
  net.validate();
  const ContractionPlan checked = replay_cost(net, plan.order);
  if (checked.max_tensor_elems > opts.memory_guard) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "largest tensor has %.3g elements, above the memory guard %.3g",
                  checked.max_tensor_elems, opts.memory_guard);
    throw ResourceError(buf);
  }
  std::vector<FockTensor> nodes = net.tensors;
  ContractStats local;
  for (const FockTensor& t : nodes) local.max_tensor_elems = std::max(local.max_tensor_elems, product_of(t.dims));
  for (auto [x, y] : plan.order) {
    FockTensor out = contract_two(nodes[x], nodes[y], local.flops);
    nodes[x] = {};
    nodes[y] = {};
    local.max_tensor_elems = std::max(local.max_tensor_elems, double(out.values.size()));
    nodes.push_back(std::move(out));
  }
  if (stats) *stats = local;
  FockTensor& last = nodes.back();
  return permuted(last, net.open_labels);
}

cplx contract(const TensorNetwork& net, const ContractionPlan& plan, const ContractOptions& opts,
              ContractStats* stats) {
  if (!net.open_labels.empty()) throw ContractViolation("contract needs a closed network; use contract_to_tensor");
  const FockTensor t = contract_to_tensor(net, plan, opts, stats);
  return t.values.at(0);
}

nlohmann::json plan_to_json(const ContractionPlan& plan) {
  nlohmann::json j;
  j["est_flops"] = plan.est_flops;
  j["max_tensor_elems"] = plan.max_tensor_elems;
  auto order = nlohmann::json::array();
  for (auto [x, y] : plan.order) order.push_back({x, y});
  j["order"] = std::move(order);
  return j;
}

ContractionPlan plan_from_json(const nlohmann::json& j) {
  ContractionPlan plan;
  plan.est_flops = j.at("est_flops").get<double>();
  plan.max_tensor_elems = j.at("max_tensor_elems").get<double>();
  for (const auto& step : j.at("order")) {
    if (!step.is_array() || step.size() != 2) throw ContractViolation("plan order entries must be [i, j] pairs");
    plan.order.emplace_back(step[0].get<std::size_t>(), step[1].get<std::size_t>());
  }
  return plan;
}

}  // namespace hdgbs
