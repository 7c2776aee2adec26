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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit code is
// the number of failed criteria. Pass criterion ids as arguments to run a
// subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "hdgbs/bench.hpp"
#include "hdgbs/circuit.hpp"
#include "hdgbs/focknet.hpp"
#include "hdgbs/hafnian.hpp"
#include "hdgbs/hiding.hpp"
#include "hdgbs/probability.hpp"

namespace {

using hdgbs::cplx;
using hdgbs::OutcomePattern;
using hdgbs::Seed;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

Outcome hafnian_oracle() {
  std::mt19937_64 gen(101);
  double worst = 0.0;
  for (std::size_t n = 2; n <= 12; n += 2)
    for (int t = 0; t < 200; ++t) {
      const auto b = oracle::random_symmetric(n, gen);
      worst = std::max(worst, rel(hdgbs::hafnian_fast(b), hdgbs::hafnian_enum(b)));
    }
  return {worst <= 1e-10, fmt("max rel err %.3g over 1200 matrices (tol 1e-10)", worst)};
}

Outcome permanent_identity() {
  std::mt19937_64 gen(102);
  double via = 0.0, brute = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + std::size_t(t) % 7;
    const auto g = oracle::random_matrix(n, n, gen);
    const cplx p = hdgbs::permanent(g);
    via = std::max(via, rel(hdgbs::permanent_via_hafnian(g), p));
    if (n <= 6) brute = std::max(brute, rel(p, oracle::permanent_bruteforce(g)));
  }
  return {via <= 1e-10 && brute <= 1e-12,
          fmt("via-Hafnian rel err %.3g (tol 1e-10), brute-force rel err %.3g (tol 1e-12)", via, brute)};
}

Outcome photon_statistics() {
  const auto d = hdgbs::lossy_total_dist_closed(216, 0.8, 0.5, 400);
  const double mean = d.mean(), sd = std::sqrt(d.variance());
  const std::vector<double> r(216, 0.8);
  const std::size_t argmax = hdgbs::total_dist_convolution(r, 1.0, 400).argmax();
  const double p168 = d.prob(168);
  const bool ok_mean = std::abs(mean - 85.2) <= 0.05;
  const bool ok_sd = std::abs(sd - 13.9) <= 0.05;
  const bool ok_arg = argmax == 168 && hdgbs::most_probable_even(216, 0.8) == 168;
  const bool ok_p = std::abs(p168 / 7.28e-8 - 1.0) <= 0.01;
  return {ok_mean && ok_sd && ok_arg && ok_p,
          fmt("mean %.4f [%s], std %.4f [%s], lossless argmax %zu [%s], Pr(168) %.5g [%s]", mean,
              ok_mean ? "ok" : "off", sd, ok_sd ? "ok" : "off", argmax, ok_arg ? "ok" : "off", p168,
              ok_p ? "ok" : "off")};
}

Outcome closed_vs_convolution() {
  double worst = 0.0;
  for (std::size_t m : {1u, 2u, 10u, 50u})
    for (double r : {0.2, 0.8, 1.2})
      for (double eta : {0.0, 0.3, 0.5, 1.0}) {
        const auto a = hdgbs::lossy_total_dist_closed(m, r, eta, 400);
        const std::vector<double> rv(m, r);
        const auto b = hdgbs::total_dist_convolution(rv, eta, 400);
        for (std::size_t n = 0; n <= 400; ++n) worst = std::max(worst, std::abs(a.prob(n) - b.prob(n)));
      }
  return {worst <= 1e-10, fmt("max |closed - convolution| %.3g over 48 grid points (tol 1e-10)", worst)};
}

Outcome normalization() {
  const auto inst = hdgbs::build_instance(0.3, 2, 2, 1, Seed{105});
  const auto a = hdgbs::adjacency(inst);
  const std::vector<double> r(4, 0.3);
  double s = 0.0;
  for (const auto& n : hdgbs::enumerate_patterns(4, 10)) s += hdgbs::outcome_probability(a, r, n);
  return {s >= 1.0 - 1e-5 && s <= 1.0, fmt("sum over N <= 10 = %.12f", s)};
}

Outcome tensor_network_cross_check() {
  const auto inst = hdgbs::build_instance(0.3, 2, 2, 1, Seed{106});
  const auto a = hdgbs::adjacency(inst);
  const std::vector<double> r(4, 0.3);
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& n : hdgbs::enumerate_patterns(4, 4)) {
    const auto net = hdgbs::build_network(inst, 12, n);
    const double p = std::norm(hdgbs::contract(net, hdgbs::contraction_cost(net, 4, Seed{1})));
    worst = std::max(worst, std::abs(p - hdgbs::outcome_probability(a, r, n)));
    ++count;
  }
  return {worst <= 1e-8, fmt("max |tn - hafnian| %.3g over %zu patterns (tol 1e-8)", worst, count)};
}

Outcome cost_model_fit() {
  std::vector<std::size_t> sizes;
  for (std::size_t n = 16; n <= 36; n += 2) sizes.push_back(n);
  const auto recs = hdgbs::bench_hafnian(sizes, 3, Seed{107}, 1);
  const auto m = hdgbs::fit_cost_model(recs);
  const double p = hdgbs::residual_trend_pvalue(recs, m);
  return {m.r_squared >= 0.99,
          fmt("R^2 %.5f (tol 0.99), local c %.3g s, t(36) %.3g s, residual trend p %.3g", m.r_squared, m.c,
              recs.back().wall_seconds, p)};
}

Outcome per_sample_cost() {
  const auto d = hdgbs::lossy_total_dist_closed(216, 0.8, 0.5, 400);
  const auto fugaku = hdgbs::extrapolate({hdgbs::kNiagaraC, 1.0, "niagara"}, hdgbs::kNiagaraOverFugaku, "fugaku");
  const auto sc = hdgbs::sample_time_estimate(d, fugaku, 100.0, 1e-7);
  const double decades = std::abs(std::log10(sc.seconds / 4e7));
  const bool ok_cut = sc.n_cut == 166;
  const bool ok_est = decades <= 1.0;
  return {ok_cut && ok_est, fmt("n_cut %zu [%s], estimate %.3g s, %.2f decades from 4e7 [%s]", sc.n_cut,
                                ok_cut ? "ok" : "off", sc.seconds, decades, ok_est ? "ok" : "off")};
}

Outcome hiding_trends() {
  using hdgbs::EnsembleKind;
  auto pair = [](std::size_t m, std::size_t n, std::size_t k) {
    return std::pair{hdgbs::EnsembleSpec{EnsembleKind::coe_sub, m, n, k},
                     hdgbs::EnsembleSpec{EnsembleKind::gaussian_sym, m, n, k}};
  };
  // (i)
  const auto [a1, b1] = pair(200, 10, 200);
  const auto c1 = hdgbs::compare_spectra(a1, b1, 10000, 60, Seed{109});
  const bool ok1 = c1.tv < 3.0 * c1.noise_floor;
  // (ii)
  std::vector<double> tv2;
  for (std::size_t m : {100u, 200u, 400u}) {
    const auto [a, b] = pair(m, 8, m);
    tv2.push_back(hdgbs::compare_spectra(a, b, 1000, 60, Seed{110 + m}).tv);
  }
  const bool ok2 = tv2[0] > tv2[1] && tv2[1] > tv2[2];
  // (iii)
  std::vector<double> tv3, floor3;
  for (std::size_t k : {4u, 50u, 200u}) {
    const auto [a, b] = pair(200, 4, k);
    const auto c = hdgbs::compare_spectra(a, b, 1000, 60, Seed{120 + k});
    tv3.push_back(c.tv);
    floor3.push_back(c.noise_floor);
  }
  const double spread = *std::max_element(tv3.begin(), tv3.end()) - *std::min_element(tv3.begin(), tv3.end());
  const double mc = (floor3[0] + floor3[1] + floor3[2]) / 3.0;
  const bool ok3 = spread < 2.0 * mc;
  return {ok1 && ok2 && ok3,
          fmt("(i) tv %.4f vs 3x floor %.4f [%s]; (ii) tv %.4f > %.4f > %.4f [%s]; (iii) spread %.4f vs 2x MC "
              "err %.4f [%s]",
              c1.tv, 3.0 * c1.noise_floor, ok1 ? "ok" : "off", tv2[0], tv2[1], tv2[2], ok2 ? "ok" : "off", spread,
              2.0 * mc, ok3 ? "ok" : "off")};
}

Outcome contraction_cost_trend() {
  std::vector<double> flops, elems;
  for (std::size_t a : {4u, 5u, 6u}) {
    const auto inst = hdgbs::build_instance(0.8, a, 3, 1, Seed{111});
    const auto net = hdgbs::build_network(inst, 4, OutcomePattern{std::vector<unsigned>(inst.modes(), 0)});
    const auto plan = hdgbs::contraction_cost(net, 20, Seed{112});
    flops.push_back(plan.est_flops);
    elems.push_back(plan.max_tensor_elems);
  }
  const bool inc = flops[0] < flops[1] && flops[1] < flops[2];
  const double g1 = std::log(flops[1] / flops[0]), g2 = std::log(flops[2] / flops[1]);
  const bool superexp = g2 > g1;
  const bool elems_inc = elems[0] < elems[1] && elems[1] < elems[2];
  return {inc && superexp && elems_inc,
          fmt("flops %.3g, %.3g, %.3g (log gaps %.2f, %.2f); max elems %.3g, %.3g, %.3g", flops[0], flops[1],
              flops[2], g1, g2, elems[0], elems[1], elems[2])};
}

Outcome loss_budget_properties() {
  using hdgbs::LossBudget;
  using hdgbs::LossMode;
  bool ok = hdgbs::loss_budget(6, 3, 1, LossBudget{}).transmission == 1.0 &&
            hdgbs::loss_budget(6, 3, 1, LossBudget{1, 1, 1, LossMode::recirculator}).transmission == 1.0;
  const LossBudget base{0.9, 0.998, 0.999, LossMode::recirculator};
  const double t0 = hdgbs::loss_budget(6, 3, 1, base).transmission;
  for (int k = 0; k < 3; ++k) {
    LossBudget b = base;
    (k == 0 ? b.eta_bs : k == 1 ? b.eta_unit : b.eta_recirc) -= 1e-3;
    ok = ok && hdgbs::loss_budget(6, 3, 1, b).transmission < t0;
  }
  const double copies = hdgbs::loss_budget(6, 3, 1, LossBudget{0.9, 0.998, 1.0, LossMode::copies}).transmission;
  const double want = std::pow(0.9, 3) * std::pow(0.998, 43);
  ok = ok && std::abs(copies - want) <= 1e-12;
  return {ok, fmt("copies (6,3,1,0.9,0.998) = %.15f, formula %.15f", copies, want)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "hafnian oracle equivalence", hafnian_oracle},
      {2, "permanent identity", permanent_identity},
      {3, "photon-number statistics at M=216", photon_statistics},
      {4, "closed form vs convolution", closed_vs_convolution},
      {5, "probability normalization", normalization},
      {6, "tensor network vs hafnian", tensor_network_cross_check},
      {7, "cost model fit at desk scale", cost_model_fit},
      {8, "per-sample cost estimate", per_sample_cost},
      {9, "hiding trends", hiding_trends},
      {10, "contraction cost trend", contraction_cost_trend},
      {11, "loss budget properties", loss_budget_properties},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
