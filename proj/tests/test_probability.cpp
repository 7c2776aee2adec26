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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "hdgbs/circuit.hpp"
#include "hdgbs/error.hpp"
#include "hdgbs/focknet.hpp"
#include "hdgbs/probability.hpp"
#include "hdgbs/random_matrix.hpp"
#include "oracles.hpp"

namespace {

using hdgbs::ComplexMatrix;
using hdgbs::OutcomePattern;
using hdgbs::Seed;

double sech(double r) { return 1.0 / std::cosh(r); }

TEST(OutcomeProbability, Vacuum) {
  const auto inst = hdgbs::build_instance(0.4, 2, 2, 1, Seed{1});
  const std::vector<double> r(4, 0.4);
  EXPECT_NEAR(hdgbs::outcome_probability(hdgbs::adjacency(inst), r, OutcomePattern{{0, 0, 0, 0}}),
              std::pow(sech(0.4), 4), 1e-14);
}

TEST(OutcomeProbability, SingleModeFockExpansion) {
  for (double r : {0.2, 0.8, 1.3}) {
    ComplexMatrix a(1, 1, {std::tanh(r)});
    const std::vector<double> rv{r};
    const auto ref = oracle::squeezed_probs(r, 8);
    for (unsigned n = 0; n <= 8; ++n)
      EXPECT_NEAR(hdgbs::outcome_probability(a, rv, OutcomePattern{{n}}), ref[n], 1e-14) << n;
    EXPECT_NEAR(ref[2], std::tanh(r) * std::tanh(r) / (2 * std::cosh(r)), 1e-15);
  }
}

TEST(OutcomeProbability, OddTotalIsZero) {
  const auto inst = hdgbs::build_instance(0.4, 2, 2, 1, Seed{2});
  const std::vector<double> r(4, 0.4);
  EXPECT_EQ(hdgbs::outcome_probability(hdgbs::adjacency(inst), r, OutcomePattern{{1, 0, 2, 0}}), 0.0);
}

TEST(OutcomeProbability, BeamSplitterMatchesTensorNetwork) {
  // 50:50 splitter on two modes with different squeezing
  const double s = 1.0 / std::sqrt(2.0);
  hdgbs::GbsInstance inst;
  inst.r = {0.25, 0.15};
  inst.a = 2;
  inst.dim = 1;
  inst.cycles = 1;
  ComplexMatrix v(2, 2, {s, s, s, -s});
  inst.gates.push_back({0, 1, v});
  inst.unitary = v;
  const auto a = hdgbs::adjacency_general(inst.unitary, inst.r);
  for (unsigned n1 = 0; n1 <= 4; ++n1)
    for (unsigned n2 = 0; n1 + n2 <= 4; ++n2) {
      const OutcomePattern n{{n1, n2}};
      const auto net = hdgbs::build_network(inst, 14, n);
      const double tn = std::norm(hdgbs::contract(net, hdgbs::contraction_cost(net, 1, Seed{0})));
      EXPECT_NEAR(hdgbs::outcome_probability(a, inst.r, n), tn, 1e-8) << n.to_string();
    }
}

TEST(OutcomeProbability, Errors) {
  const std::vector<double> r(3, 0.4);
  std::mt19937_64 gen(3);
  const auto a = oracle::random_symmetric(4, gen);
  EXPECT_THROW(hdgbs::outcome_probability(a, r, OutcomePattern{{0, 0, 0, 0}}), hdgbs::DimensionError);
}

TEST(CollisionFree, VacuumAndFullK) {
  const auto u = hdgbs::haar_unitary(6, Seed{4});
  EXPECT_NEAR(hdgbs::collision_free_probability(u, 4, 0.5, OutcomePattern{{0, 0, 0, 0, 0, 0}}),
              std::pow(sech(0.5), 4), 1e-14);
  const OutcomePattern n{{1, 0, 0, 1, 0, 0}};
  const std::vector<double> r(6, 0.5);
  EXPECT_NEAR(hdgbs::collision_free_probability(u, 6, 0.5, n),
              hdgbs::outcome_probability(hdgbs::adjacency_general(u, r), r, n), 1e-14);
}

TEST(CollisionFree, AgreesWithGeneralRoute) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 2 + gen() % 9;
    const std::size_t k = 1 + gen() % m;
    const auto u = hdgbs::haar_unitary(m, Seed{gen()});
    std::vector<unsigned> counts(m, 0);
    const std::size_t photons = std::min<std::size_t>(m, 2 * (gen() % 3));
    for (std::size_t p = 0; p < photons;) {
      const std::size_t i = gen() % m;
      if (!counts[i]) {
        counts[i] = 1;
        ++p;
      }
    }
    const OutcomePattern n{counts};
    std::vector<double> r(m, 0.0);
    for (std::size_t i = 0; i < k; ++i) r[i] = 0.6;
    const double general = hdgbs::outcome_probability(hdgbs::adjacency_general(u, r), r, n);
    const double cf = hdgbs::collision_free_probability(u, k, 0.6, n);
    EXPECT_LE(std::abs(general - cf), 1e-12 * std::max(general, 1e-300) + 1e-300) << m << " " << k;
  }
}

TEST(Moments, MeanPhotons) {
  EXPECT_EQ(hdgbs::mean_total_photons(216, 0.0), 0.0);
  EXPECT_NEAR(hdgbs::mean_total_photons(216, 0.8), 170.4, 0.05);
  EXPECT_NEAR(hdgbs::mean_total_photons(100, 0.8), 78.9, 0.05);
}

TEST(Moments, ClosedFormValues) {
  const auto mo = hdgbs::photon_moments(216, 0.8, 0.5);
  EXPECT_NEAR(mo.mean, 85.18, 0.005);
  EXPECT_NEAR(std::sqrt(mo.variance), 13.96, 0.005);
  const double s = std::sinh(0.8) * std::sinh(0.8);
  EXPECT_NEAR(hdgbs::photon_moments(10, 0.8, 1.0).variance, 10 * s * (2 + 2 * s), 1e-12);
}

TEST(Moments, MatchDistribution) {
  const std::vector<double> r{0.3, 0.9, 0.5, 1.1};
  for (double eta : {0.2, 0.7, 1.0}) {
    const auto d = hdgbs::total_dist_convolution(r, eta, 300);
    const auto mo = hdgbs::photon_moments(r, eta);
    EXPECT_NEAR(d.mean() / mo.mean, 1.0, 1e-6);
    EXPECT_NEAR(d.variance() / mo.variance, 1.0, 1e-6);
  }
}

TEST(SqueezedVacuum, Basics) {
  const auto d = hdgbs::squeezed_vacuum_dist(0.8, 400);
  EXPECT_NEAR(d.prob(0), sech(0.8), 1e-15);
  EXPECT_EQ(d.prob(1), 0.0);
  EXPECT_NEAR(d.total_mass(), 1.0, 1e-12);
  const auto ref = oracle::squeezed_probs(0.8, 30);
  for (std::size_t n = 0; n <= 30; ++n) EXPECT_NEAR(d.prob(n), ref[n], 1e-15);
}

TEST(LossyClosed, LosslessLimit) {
  const auto d = hdgbs::lossy_total_dist_closed(10, 0.6, 1.0, 200);
  const std::vector<double> r(10, 0.6);
  const auto c = hdgbs::total_dist_convolution(r, 1.0, 200);
  for (std::size_t n = 0; n <= 200; ++n) {
    if (n % 2) {
      EXPECT_EQ(d.prob(n), 0.0);
    }
    EXPECT_NEAR(d.prob(n), c.prob(n), 1e-12);
  }
}

TEST(LossyClosed, ZeroTransmissionIsPointMass) {
  const auto d = hdgbs::lossy_total_dist_closed(20, 0.8, 0.0, 50);
  EXPECT_NEAR(d.prob(0), 1.0, 1e-12);
  for (std::size_t n = 1; n <= 50; ++n) EXPECT_EQ(d.prob(n), 0.0);
}

TEST(LossyClosed, AgreesWithConvolutionOnGrid) {
  for (std::size_t m : {1u, 2u, 10u, 50u})
    for (double r : {0.2, 0.8, 1.2})
      for (double eta : {0.0, 0.3, 0.5, 1.0}) {
        const auto a = hdgbs::lossy_total_dist_closed(m, r, eta, 400);
        const std::vector<double> rv(m, r);
        const auto b = hdgbs::total_dist_convolution(rv, eta, 400);
        double worst = 0.0;
        for (std::size_t n = 0; n <= 400; ++n) worst = std::max(worst, std::abs(a.prob(n) - b.prob(n)));
        EXPECT_LE(worst, 1e-10) << m << " " << r << " " << eta;
      }
}

TEST(LossyClosed, OddMassScalesWithLoss) {
  const auto a = hdgbs::lossy_total_dist_closed(6, 0.5, 0.999, 60);
  const auto b = hdgbs::lossy_total_dist_closed(6, 0.5, 0.998, 60);
  // Pr(odd n) is proportional to (1 - eta) to leading order
  EXPECT_NEAR(b.prob(1) / a.prob(1), 2.0, 0.01);
}

TEST(LossyClosed, PaperScaleValues) {
  const auto d = hdgbs::lossy_total_dist_closed(216, 0.8, 0.5, 400);
  EXPECT_NEAR(d.prob(168) / 7.28e-8, 1.0, 0.01);
  EXPECT_NEAR(d.mean(), 85.18, 0.01);
  EXPECT_LE(d.total_mass(), 1.0 + 1e-9);
  EXPECT_LE(d.truncated_mass, 1e-12);
}

TEST(LossyClosed, LossShrinksMean) {
  double last = -1.0;
  for (double eta : {0.1, 0.4, 0.7, 1.0}) {
    const double m = hdgbs::lossy_total_dist_closed(30, 0.7, eta, 300).mean();
    EXPECT_GT(m, last);
    last = m;
  }
}

TEST(Convolution, SingleModeAndErrors) {
  const std::vector<double> r{0.7};
  const auto a = hdgbs::total_dist_convolution(r, 1.0, 100);
  const auto b = hdgbs::squeezed_vacuum_dist(0.7, 100);
  for (std::size_t n = 0; n <= 100; ++n) EXPECT_NEAR(a.prob(n), b.prob(n), 1e-15);
  EXPECT_THROW(hdgbs::total_dist_convolution(r, 1.5, 10), hdgbs::ParameterError);
  EXPECT_THROW(hdgbs::total_dist_convolution(std::vector<double>{}, 0.5, 10), hdgbs::ParameterError);
}

TEST(MostProbable, FormulaAndArgmax) {
  EXPECT_EQ(hdgbs::most_probable_even(216, 0.8), 168u);
  EXPECT_EQ(hdgbs::most_probable_even(216, 1e-6), 0u);
  for (std::size_t m : {10u, 50u, 216u}) {
    const std::vector<double> r(m, 0.8);
    const auto d = hdgbs::total_dist_convolution(r, 1.0, 500);
    EXPECT_EQ(d.argmax(), hdgbs::most_probable_even(m, 0.8)) << m;
  }
}

TEST(Normalization, SmallInstance) {
  const auto inst = hdgbs::build_instance(0.3, 2, 2, 1, Seed{6});
  const auto a = hdgbs::adjacency(inst);
  const std::vector<double> r(4, 0.3);
  double s = 0.0;
  for (const auto& n : hdgbs::enumerate_patterns(4, 10)) s += hdgbs::outcome_probability(a, r, n);
  EXPECT_GE(s, 1.0 - 1e-5);
  EXPECT_LE(s, 1.0 + 1e-12);
}

TEST(ExactSample, VacuumWhenUnsqueezed) {
  const auto inst = hdgbs::build_instance(0.0, 2, 1, 1, Seed{7});
  const auto set = hdgbs::exact_sample(inst, 4, 50, Seed{1});
  for (const auto& p : set.samples) EXPECT_EQ(p.total(), 0u);
}

TEST(ExactSample, TruncatedMassIsTotalPhotonTail) {
  // Four modes at r = 0.3: Pr(N = 2k) = (k + 1) tanh^{2k} r sech^4 r, whatever the interferometer.
  const auto inst = hdgbs::build_instance(0.3, 2, 2, 1, Seed{8});
  const double t2 = std::tanh(0.3) * std::tanh(0.3);
  double tail = 0.0;
  for (int k = 5; k < 200; ++k) tail += (k + 1) * std::pow(t2, k) * std::pow(sech(0.3), 4);
  EXPECT_NEAR(hdgbs::exact_sample(inst, 8, 1, Seed{1}).truncated_mass, tail, 1e-12);
  EXPECT_LE(hdgbs::exact_sample(inst, 12, 1, Seed{1}).truncated_mass, 1e-6);
}

TEST(ExactSample, FrequenciesMatchProbabilities) {
  const auto inst = hdgbs::build_instance(0.6, 2, 1, 1, Seed{9});
  const std::size_t count = 100000;
  const auto set = hdgbs::exact_sample(inst, 8, count, Seed{10});
  std::map<std::vector<unsigned>, std::size_t> freq;
  for (const auto& p : set.samples) ++freq[p.counts];
  const auto a = hdgbs::adjacency(inst);
  const std::vector<double> r(2, 0.6);
  const double kept = 1.0 - set.truncated_mass;
  for (const auto& n : hdgbs::enumerate_patterns(2, 4)) {
    const double p = hdgbs::outcome_probability(a, r, n) / kept;
    const double sd = std::sqrt(p * (1 - p) / double(count));
    EXPECT_NEAR(double(freq[n.counts]) / double(count), p, 4 * sd + 1e-12) << n.to_string();
  }
}

TEST(ExactSample, Deterministic) {
  const auto inst = hdgbs::build_instance(0.5, 2, 1, 1, Seed{11});
  const auto a = hdgbs::exact_sample(inst, 6, 100, Seed{3});
  const auto b = hdgbs::exact_sample(inst, 6, 100, Seed{3});
  EXPECT_EQ(a.samples, b.samples);
}

TEST(ExactSample, SupportGuard) {
  const auto inst = hdgbs::build_instance(0.5, 2, 4, 1, Seed{12});
  hdgbs::SamplerOptions opts;
  opts.max_patterns = 1000;
  EXPECT_THROW(hdgbs::exact_sample(inst, 10, 1, Seed{1}, opts), hdgbs::ResourceError);
}

TEST(DistCsv, Format) {
  const auto d = hdgbs::squeezed_vacuum_dist(0.5, 3);
  std::ostringstream os;
  hdgbs::write_dist_csv(os, d);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "n,prob,log_prob");
  std::getline(is, line);
  EXPECT_EQ(line.substr(0, 2), "0,");
  std::getline(is, line);
  EXPECT_EQ(line, "1,0,-inf");
}

}  // namespace
