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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdgbs/bench.hpp"
#include "hdgbs/circuit.hpp"
#include "hdgbs/error.hpp"
#include "hdgbs/focknet.hpp"
#include "hdgbs/hafnian.hpp"
#include "hdgbs/hiding.hpp"
#include "hdgbs/probability.hpp"

using namespace hdgbs;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 42;
  unsigned threads = 1;
  std::string out = "-";
};

void emit(const Globals& g, const std::string& text) {
  if (g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(g.out, std::ios::binary);
  if (!os) throw Error("cannot open " + g.out + " for writing");
  os << text;
}

json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw ContractViolation(path + ": " + e.what());
  }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    const unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw ParameterError("bad size '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hdgbs: high-dimensional Gaussian boson sampling toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str();
  app.add_option("--out", g.out, "Output file ('-' for stdout)")->capture_default_str();

  // haf
  auto* haf = app.add_subcommand("haf", "Hafnian of a symmetric matrix");
  std::string haf_matrix, haf_method = "auto";
  haf->add_option("--matrix", haf_matrix, "Matrix JSON")->required();
  haf->add_option("--method", haf_method, "auto, fast or enum")->check(CLI::IsMember({"auto", "fast", "enum"}));

  // prob
  auto* prob = app.add_subcommand("prob", "Outcome probability of a pattern");
  std::string prob_instance, prob_pattern;
  prob->add_option("--instance", prob_instance, "Instance JSON")->required();
  prob->add_option("--pattern", prob_pattern, "Photon counts, e.g. 0,1,1,0")->required();

  // instance
  auto* inst = app.add_subcommand("instance", "Delay-line instances");
  inst->require_subcommand(1);
  auto* inst_new = inst->add_subcommand("new", "Build a random instance");
  double new_r = 0.0;
  std::size_t new_a = 0, new_d = 0, new_c = 0;
  bool new_share = false;
  inst_new->add_option("--r", new_r, "Squeezing")->required();
  inst_new->add_option("--a", new_a, "Lattice size")->required();
  inst_new->add_option("--D", new_d, "Lattice dimension")->required();
  inst_new->add_option("--C", new_c, "Cycles")->required();
  inst_new->add_flag("--share-layer-unitary", new_share, "One V per (cycle, range) layer");
  auto* inst_loss = inst->add_subcommand("lossbudget", "End-to-end transmission");
  std::size_t lb_a = 0, lb_d = 0, lb_c = 0;
  LossBudget lb;
  std::string lb_mode = "copies";
  inst_loss->add_option("--a", lb_a, "Lattice size")->required();
  inst_loss->add_option("--D", lb_d, "Lattice dimension")->required();
  inst_loss->add_option("--C", lb_c, "Cycles")->required();
  inst_loss->add_option("--eta-bs", lb.eta_bs, "Beam-splitter transmission");
  inst_loss->add_option("--eta-unit", lb.eta_unit, "Transmission per unit delay");
  inst_loss->add_option("--eta-recirc", lb.eta_recirc, "Recirculator transmission per pass");
  inst_loss->add_option("--mode", lb_mode, "copies or recirculator")
      ->check(CLI::IsMember({"copies", "recirculator"}));

  // photondist
  auto* pd = app.add_subcommand("photondist", "Total photon-number distribution");
  std::size_t pd_modes = 0, pd_nmax = 400;
  double pd_r = 0.0, pd_eta = 1.0;
  std::string pd_method = "closed";
  pd->add_option("--modes", pd_modes, "Mode count")->required();
  pd->add_option("--r", pd_r, "Squeezing")->required();
  pd->add_option("--eta", pd_eta, "Transmission");
  pd->add_option("--nmax", pd_nmax, "Largest photon number");
  pd->add_option("--method", pd_method, "closed or conv")->check(CLI::IsMember({"closed", "conv"}));

  // hiding
  auto* hid = app.add_subcommand("hiding", "Random-matrix hiding experiments");
  hid->require_subcommand(1);
  auto* hid_spec = hid->add_subcommand("spectra", "COE vs symmetric-Gaussian singular spectra");
  std::size_t hs_m = 200, hs_k = 200, hs_n = 10, hs_samples = 10000, hs_bins = 60;
  hid_spec->add_option("--M", hs_m, "Modes");
  hid_spec->add_option("--K", hs_k, "Squeezed modes");
  hid_spec->add_option("--N", hs_n, "Photons");
  hid_spec->add_option("--samples", hs_samples, "Draws per ensemble");
  hid_spec->add_option("--bins", hs_bins, "Histogram bins");
  auto* hid_scan = hid->add_subcommand("scan", "TV distance over a (M, N, K) grid");
  std::string scan_config;
  hid_scan->add_option("--config", scan_config, "Scan JSON")->required();

  // tn
  auto* tn = app.add_subcommand("tn", "Fock-basis tensor networks");
  tn->require_subcommand(1);
  auto* tn_cost = tn->add_subcommand("cost", "Greedy contraction-path cost");
  std::string tc_instance, tc_pattern;
  std::size_t tc_cutoff = 4, tc_trials = 200;
  bool tc_open = false;
  tn_cost->add_option("--instance", tc_instance, "Instance JSON")->required();
  tn_cost->add_option("--cutoff", tc_cutoff, "Fock cutoff");
  tn_cost->add_option("--trials", tc_trials, "Randomized greedy trials");
  tn_cost->add_option("--pattern", tc_pattern, "Close outputs with this pattern (default vacuum)");
  tn_cost->add_flag("--open", tc_open, "Leave outputs open");
  auto* tn_con = tn->add_subcommand("contract", "Exact amplitude of a pattern");
  std::string cc_instance, cc_pattern, cc_plan;
  std::size_t cc_cutoff = 12, cc_trials = 16;
  double cc_guard = 1e8;
  tn_con->add_option("--instance", cc_instance, "Instance JSON")->required();
  tn_con->add_option("--pattern", cc_pattern, "Photon counts")->required();
  tn_con->add_option("--cutoff", cc_cutoff, "Fock cutoff");
  tn_con->add_option("--trials", cc_trials, "Path-search trials when no plan is given");
  tn_con->add_option("--plan", cc_plan, "Plan JSON from 'tn cost'");
  tn_con->add_option("--memory-guard", cc_guard, "Largest tensor allowed (elements)");

  // bench
  auto* bench = app.add_subcommand("bench", "Hafnian cost benchmarks");
  bench->require_subcommand(1);
  auto* b_run = bench->add_subcommand("run", "Time the fast Hafnian");
  std::string br_sizes = "16,18,20,22,24,26,28";
  std::size_t br_reps = 3;
  b_run->add_option("--sizes", br_sizes, "Comma-separated even sizes");
  b_run->add_option("--reps", br_reps, "Timed repetitions per size");
  auto* b_fit = bench->add_subcommand("fit", "Fit c n^3 2^(n/2)");
  std::string bf_records, bf_label = "local";
  b_fit->add_option("--records", bf_records, "Bench CSV")->required();
  b_fit->add_option("--label", bf_label, "Machine label");
  auto* b_ext = bench->add_subcommand("extrapolate", "Scale c by an Rmax ratio");
  double be_c = kNiagaraC, be_ratio = kNiagaraOverFugaku;
  std::string be_label = "extrapolated";
  b_ext->add_option("--c", be_c, "Source c (seconds)");
  b_ext->add_option("--ratio", be_ratio, "Rmax(target) / Rmax(source)");
  b_ext->add_option("--label", be_label, "Target label");
  auto* b_sc = bench->add_subcommand("sample-cost", "Seconds per exact sample");
  std::size_t bs_modes = 216, bs_nmax = 400;
  double bs_r = 0.8, bs_eta = 0.5, bs_c = kNiagaraC / kNiagaraOverFugaku, bs_overhead = 100.0, bs_pmin = 1e-7;
  b_sc->add_option("--modes", bs_modes, "Mode count");
  b_sc->add_option("--r", bs_r, "Squeezing");
  b_sc->add_option("--eta", bs_eta, "Transmission");
  b_sc->add_option("--nmax", bs_nmax, "Largest photon number");
  b_sc->add_option("--c", bs_c, "Cost constant (seconds)");
  b_sc->add_option("--overhead", bs_overhead, "Multiplicative overhead");
  b_sc->add_option("--p-min", bs_pmin, "Smallest probability kept");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    HafnianOptions hopts;
    hopts.threads = std::max(1u, g.threads);

    if (*haf) {
      const ComplexMatrix m = matrix_from_json(read_json(haf_matrix));
      HafnianResult res;
      if (haf_method == "auto")
        res = hafnian(m, m.rows() <= hopts.enumeration_limit ? HafnianMethod::enumeration : HafnianMethod::fast,
                      hopts);
      else
        res = hafnian(m, haf_method == "enum" ? HafnianMethod::enumeration : HafnianMethod::fast, hopts);
      json j{{"n", res.matrix_size},
             {"method", res.method == HafnianMethod::fast ? "fast" : "enum"},
             {"re", res.value.real()},
             {"im", res.value.imag()}};
      emit(g, j.dump(2) + "\n");
    } else if (*prob) {
      const GbsInstance in = instance_from_json(read_json(prob_instance));
      const OutcomePattern n = OutcomePattern::parse(prob_pattern);
      const auto r = in.squeezing();
      const double p = outcome_probability(adjacency_general(in.unitary, r), r, n, hopts);
      json j{{"pattern", n.to_string()}, {"probability", p}};
      emit(g, j.dump(2) + "\n");
    } else if (*inst_new) {
      BuildOptions bo;
      bo.share_layer_unitary = new_share;
      const GbsInstance in = build_instance(new_r, new_a, new_d, new_c, Seed{g.seed}, bo);
      emit(g, instance_to_json(in).dump() + "\n");
    } else if (*inst_loss) {
      lb.mode = lb_mode == "copies" ? LossMode::copies : LossMode::recirculator;
      const LossReport rep = loss_budget(lb_a, lb_d, lb_c, lb);
      json j{{"transmission", rep.transmission},
             {"approx_transmission", rep.approx_transmission},
             {"path_length", rep.path_length},
             {"recirc_length", rep.recirc_length},
             {"mode", lb_mode}};
      emit(g, j.dump(2) + "\n");
    } else if (*pd) {
      PhotonNumberDist d;
      if (pd_method == "closed") {
        d = lossy_total_dist_closed(pd_modes, pd_r, pd_eta, pd_nmax);
      } else {
        const std::vector<double> r(pd_modes, pd_r);
        d = total_dist_convolution(r, pd_eta, pd_nmax);
      }
      std::ostringstream os;
      write_dist_csv(os, d);
      emit(g, os.str());
    } else if (*hid_spec) {
      const EnsembleSpec coe{EnsembleKind::coe_sub, hs_m, hs_n, hs_k};
      const EnsembleSpec gsym{EnsembleKind::gaussian_sym, hs_m, hs_n, hs_k};
      const auto cmp = compare_spectra(coe, gsym, hs_samples, hs_bins, Seed{g.seed}, g.threads);
      std::ostringstream os;
      write_spectra_csv(os, cmp);
      emit(g, os.str());
      std::fprintf(stderr, "tv=%.6g noise_floor=%.6g\n", cmp.tv, cmp.noise_floor);
    } else if (*hid_scan) {
      const json cfg = read_json(scan_config);
      const auto first = ensemble_from_name(cfg.value("first", std::string("coe_sub")));
      const auto second = ensemble_from_name(cfg.value("second", std::string("gaussian_sym")));
      std::vector<std::pair<EnsembleSpec, EnsembleSpec>> grid;
      for (const auto& p : cfg.at("grid")) {
        const auto m = p.at("M").get<std::size_t>(), n = p.at("N").get<std::size_t>(), k = p.at("K").get<std::size_t>();
        grid.push_back({{first, m, n, k}, {second, m, n, k}});
      }
      const auto rows = hiding_scan(grid, cfg.value("samples", std::size_t(1000)), cfg.value("bins", std::size_t(60)),
                                    Seed{g.seed}, g.threads);
      std::ostringstream os;
      write_scan_csv(os, rows);
      emit(g, os.str());
    } else if (*tn_cost) {
      const GbsInstance in = instance_from_json(read_json(tc_instance));
      std::optional<OutcomePattern> pat;
      if (!tc_open)
        pat = tc_pattern.empty() ? OutcomePattern{std::vector<unsigned>(in.modes(), 0u)}
                                 : OutcomePattern::parse(tc_pattern);
      const TensorNetwork net = build_network(in, tc_cutoff, pat);
      emit(g, plan_to_json(contraction_cost(net, tc_trials, Seed{g.seed})).dump() + "\n");
    } else if (*tn_con) {
      const GbsInstance in = instance_from_json(read_json(cc_instance));
      const OutcomePattern n = OutcomePattern::parse(cc_pattern);
      const TensorNetwork net = build_network(in, cc_cutoff, n);
      const ContractionPlan plan =
          cc_plan.empty() ? contraction_cost(net, cc_trials, Seed{g.seed}) : plan_from_json(read_json(cc_plan));
      ContractStats st;
      const cplx amp = contract(net, plan, ContractOptions{cc_guard}, &st);
      json j{{"pattern", n.to_string()},
             {"amplitude_re", amp.real()},
             {"amplitude_im", amp.imag()},
             {"probability", std::norm(amp)},
             {"flops", st.flops},
             {"max_tensor_elems", st.max_tensor_elems}};
      emit(g, j.dump(2) + "\n");
    } else if (*b_run) {
      const auto sizes = parse_sizes(br_sizes);
      const auto recs = bench_hafnian(sizes, br_reps, Seed{g.seed}, g.threads);
      std::ostringstream os;
      write_bench_csv(os, recs);
      emit(g, os.str());
    } else if (*b_fit) {
      std::ifstream is(bf_records);
      if (!is) throw Error("cannot open " + bf_records);
      const auto recs = read_bench_csv(is);
      const CostModel m = fit_cost_model(recs, bf_label);
      json j{{"c", m.c},
             {"r_squared", m.r_squared},
             {"label", m.machine_label},
             {"residual_trend_p", residual_trend_pvalue(recs, m)}};
      emit(g, j.dump(2) + "\n");
    } else if (*b_ext) {
      const CostModel m = extrapolate(CostModel{be_c, 1.0, "source"}, be_ratio, be_label);
      json j{{"c", m.c}, {"label", m.machine_label}};
      emit(g, j.dump(2) + "\n");
    } else if (*b_sc) {
      const PhotonNumberDist d = lossy_total_dist_closed(bs_modes, bs_r, bs_eta, bs_nmax);
      const SampleCost sc = sample_time_estimate(d, CostModel{bs_c, 1.0, "target"}, bs_overhead, bs_pmin);
      json j{{"seconds", sc.seconds}, {"n_cut", sc.n_cut}, {"c", bs_c}, {"overhead", bs_overhead}, {"p_min", bs_pmin}};
      emit(g, j.dump(2) + "\n");
    }
  } catch (const ContractViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource limit: %s\n", e.what());
    return 3;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
