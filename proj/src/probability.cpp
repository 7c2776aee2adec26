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

#include "hdgbs/probability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "hdgbs/error.hpp"
#include "hdgbs/random_matrix.hpp"
#include "hdgbs/special.hpp"

namespace hdgbs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// n * log(x) with 0 * log(0) = 0.
double xlog(double n, double x) {
  if (n == 0.0) return 0.0;
  return n * std::log(x);
}

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterError("transmission eta must lie in [0, 1]");
}

void check_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw ParameterError("squeezing r must be finite and >= 0");
}

// log cosh r without overflow for large r.
double log_cosh(double r) { return r + std::log1p(std::exp(-2.0 * r)) - std::log(2.0); }

PhotonNumberDist from_log(std::vector<double> logs) {
  PhotonNumberDist d;
  d.log_probs = std::move(logs);
  d.truncated_mass = std::max(0.0, 1.0 - d.total_mass());
  return d;
}

// Single-mode squeezed vacuum, linear scale, extended until the remaining tail
// is below 1e-18.
std::vector<double> squeezed_source(double r, std::size_t at_least) {
  const double t2 = std::tanh(r) * std::tanh(r);
  std::vector<double> p;
  if (t2 == 0.0) {
    p.assign(at_least + 1, 0.0);
    p[0] = 1.0;
    return p;
  }
  const double lc = log_cosh(r);
  for (std::size_t n = 0;; ++n) {
    if (n % 2) {
      p.push_back(0.0);
      continue;
    }
    const double k = double(n / 2);
    const double lp = std::lgamma(2 * k + 1) + k * std::log(t2) - k * std::log(4.0) - 2 * std::lgamma(k + 1) - lc;
    const double v = std::exp(lp);
    p.push_back(v);
    if (n >= at_least && v * t2 / (1.0 - t2) < 1e-18) break;
    if (n > 4'000'000) throw ResourceError("squeezed-vacuum series does not converge; r too large");
  }
  return p;
}

// Binomial thinning by eta, kept up to n_max.
std::vector<double> thin(const std::vector<double>& p, double eta, std::size_t n_max) {
  std::vector<double> q(n_max + 1, 0.0);
  if (eta == 1.0) {
    for (std::size_t m = 0; m <= n_max && m < p.size(); ++m) q[m] = p[m];
    return q;
  }
  if (eta == 0.0) {
    double s = 0.0;
    for (double x : p) s += x;
    q[0] = s;
    return q;
  }
  const double le = std::log(eta), l1e = std::log1p(-eta);
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p[n] == 0.0) continue;
    const double lpn = std::log(p[n]);
    for (std::size_t m = 0; m <= std::min(n, n_max); ++m) {
      const double lb = log_binomial(double(n), double(m)) + double(m) * le + double(n - m) * l1e;
      q[m] += std::exp(lpn + lb);
    }
  }
  return q;
}

}  // namespace

double PhotonNumberDist::prob(std::size_t n) const { return n < log_probs.size() ? std::exp(log_probs[n]) : 0.0; }

std::vector<double> PhotonNumberDist::probs() const {
  std::vector<double> p(log_probs.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs[i]);
  return p;
}

double PhotonNumberDist::total_mass() const {
  double s = 0.0;
  for (double lp : log_probs) s += std::exp(lp);
  return s;
}

double PhotonNumberDist::mean() const {
  double s = 0.0;
  for (std::size_t n = 0; n < log_probs.size(); ++n) s += double(n) * std::exp(log_probs[n]);
  return s;
}

double PhotonNumberDist::variance() const {
  const double mu = mean();
  double s = 0.0;
  for (std::size_t n = 0; n < log_probs.size(); ++n) s += (double(n) - mu) * (double(n) - mu) * std::exp(log_probs[n]);
  return s;
}

std::size_t PhotonNumberDist::argmax() const {
  return std::size_t(std::max_element(log_probs.begin(), log_probs.end()) - log_probs.begin());
}

double log_outcome_probability(const ComplexMatrix& a, std::span<const double> r, const OutcomePattern& n,
                               const HafnianOptions& opts) {
  if (!a.square()) throw DimensionError("adjacency matrix must be square");
  if (r.size() != a.rows() || n.modes() != a.rows())
    throw DimensionError("squeezing/pattern length must match the adjacency size " + std::to_string(a.rows()));
  for (double x : r) check_r(x);
  if (n.total() % 2) return kNegInf;
  const ComplexMatrix sub = reduce_by_pattern(a, n);
  if (sub.rows() > opts.fast_limit)
    throw ResourceError("photon number " + std::to_string(sub.rows()) + " exceeds the Hafnian limit");
  const double mag = std::abs(hafnian_fast(sub, opts));
  if (mag == 0.0) return kNegInf;
  double lp = 2.0 * std::log(mag);
  for (std::size_t j = 0; j < n.modes(); ++j) lp -= std::lgamma(double(n.counts[j]) + 1.0) + log_cosh(r[j]);
  return lp;
}

double outcome_probability(const ComplexMatrix& a, std::span<const double> r, const OutcomePattern& n,
                           const HafnianOptions& opts) {
  return std::exp(log_outcome_probability(a, r, n, opts));
}

double collision_free_probability(const ComplexMatrix& u, std::size_t k, double r, const OutcomePattern& n,
                                  const HafnianOptions& opts) {
  check_r(r);
  if (!n.collision_free()) throw ContractViolation("collision_free_probability needs a collision-free pattern");
  const ComplexMatrix sub = symmetric_product_submatrix(u, n, k);
  const std::size_t total = sub.rows();
  if (total > opts.fast_limit) throw ResourceError("photon number exceeds the Hafnian limit");
  const double mag = std::abs(hafnian_fast(sub, opts));
  if (mag == 0.0) return 0.0;
  const double lp = xlog(double(total), std::tanh(r)) - double(k) * log_cosh(r) + 2.0 * std::log(mag);
  return std::exp(lp);
}

double mean_total_photons(std::size_t k, double r) {
  check_r(r);
  const double s = std::sinh(r);
  return double(k) * s * s;
}

PhotonNumberDist squeezed_vacuum_dist(double r, std::size_t n_max) {
  check_r(r);
  std::vector<double> logs(n_max + 1, kNegInf);
  const double t = std::tanh(r);
  const double lc = log_cosh(r);
  for (std::size_t n = 0; n <= n_max; n += 2) {
    const double k = double(n / 2);
    logs[n] = std::lgamma(2 * k + 1) + xlog(2 * k, t) - k * std::log(4.0) - 2 * std::lgamma(k + 1) - lc;
  }
  auto d = from_log(std::move(logs));
  d.modes = 1;
  d.r = {r};
  d.eta = 1.0;
  return d;
}

PhotonNumberDist lossy_total_dist_closed(std::size_t modes, double r, double eta, std::size_t n_max) {
  check_r(r);
  check_eta(eta);
  if (modes == 0) throw ParameterError("mode count must be >= 1");
  const double m = double(modes);
  const double t = std::tanh(r);
  const double z = (1.0 - eta) * (1.0 - eta) * t * t;
  const double base = -m * log_cosh(r);
  std::vector<double> logs(n_max + 1, kNegInf);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double nn = double(n);
    if (n % 2 == 0) {
      if (n > 0 && (eta == 0.0 || t == 0.0)) continue;
      logs[n] = xlog(nn, eta) + log_binomial(m / 2 + nn / 2 - 1, nn / 2) + base + xlog(nn, t) +
                log_hyp2f1(nn / 2 + 0.5, m / 2 + nn / 2, 0.5, z);
    } else {
      if (eta == 1.0 || eta == 0.0 || t == 0.0) continue;
      logs[n] = std::log1p(-eta) + std::log(nn + 1) + nn * std::log(eta) +
                log_binomial((m + nn - 1) / 2, (nn + 1) / 2) + base + (nn + 1) * std::log(t) +
                log_hyp2f1((nn + 2) / 2, (m + nn + 1) / 2, 1.5, z);
    }
  }
  auto d = from_log(std::move(logs));
  d.modes = modes;
  d.r = {r};
  d.eta = eta;
  return d;
}

PhotonNumberDist total_dist_convolution(std::span<const double> r, double eta, std::size_t n_max) {
  check_eta(eta);
  if (r.empty()) throw ParameterError("need at least one mode");
  for (double x : r) check_r(x);

  // Running distribution kept as (values scaled to max 1, log scale).
  std::vector<double> acc(n_max + 1, 0.0);
  acc[0] = 1.0;
  double log_scale = 0.0;
  std::map<double, std::vector<double>> per_mode;
  std::vector<double> next(n_max + 1);
  for (double ri : r) {
    auto it = per_mode.find(ri);
    if (it == per_mode.end()) it = per_mode.emplace(ri, thin(squeezed_source(ri, n_max), eta, n_max)).first;
    const auto& q = it->second;
    std::size_t q_top = n_max;
    while (q_top > 0 && q[q_top] == 0.0) --q_top;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i <= n_max; ++i) {
      if (acc[i] == 0.0) continue;
      const std::size_t jmax = std::min(q_top, n_max - i);
      for (std::size_t j = 0; j <= jmax; ++j) next[i + j] += acc[i] * q[j];
    }
    const double hi = *std::max_element(next.begin(), next.end());
    for (std::size_t k = 0; k <= n_max; ++k) acc[k] = next[k] / hi;
    log_scale += std::log(hi);
  }
  std::vector<double> logs(n_max + 1);
  for (std::size_t k = 0; k <= n_max; ++k) logs[k] = acc[k] > 0.0 ? std::log(acc[k]) + log_scale : kNegInf;
  auto d = from_log(std::move(logs));
  d.modes = r.size();
  d.r.assign(r.begin(), r.end());
  d.eta = eta;
  return d;
}

Moments photon_moments(std::span<const double> r, double eta) {
  check_eta(eta);
  Moments mo;
  for (double ri : r) {
    check_r(ri);
    const double s = std::sinh(ri) * std::sinh(ri);
    mo.mean += eta * s;
    mo.variance += eta * s * (1.0 + eta * (1.0 + 2.0 * s));
  }
  return mo;
}

Moments photon_moments(std::size_t modes, double r, double eta) {
  const std::vector<double> rv(modes, r);
  return photon_moments(rv, eta);
}

std::size_t most_probable_even(std::size_t modes, double r) {
  check_r(r);
  if (modes < 2) throw ParameterError("most_probable_even needs M >= 2");
  const double s = std::sinh(r) * std::sinh(r);
  return 2 * std::size_t(std::floor((double(modes) / 2.0 - 1.0) * s));
}

SampleSet exact_sample(const GbsInstance& inst, std::size_t n_max, std::size_t count, Seed seed,
                       const SamplerOptions& opts) {
  const std::size_t m = inst.modes();
  if (count_patterns(m, n_max) > opts.max_patterns)
    throw ResourceError("pattern support C(n_max + M, M) exceeds the sampler guard");
  const std::vector<double> r = inst.squeezing();
  const ComplexMatrix a = adjacency_general(inst.unitary, r);

  std::vector<OutcomePattern> support = enumerate_patterns(m, n_max);
  std::vector<double> cdf(support.size());
  double running = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i].total() % 2 == 0) running += outcome_probability(a, r, support[i], opts.hafnian);
    cdf[i] = running;
  }

  SampleSet out;
  out.support_size = support.size();
  out.truncated_mass = std::max(0.0, 1.0 - running);
  if (running <= 0.0) throw ContractViolation("no probability mass inside the enumerated support");
  Rng rng(seed);
  out.samples.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double u = rng.uniform() * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.samples.push_back(support[std::size_t(it - cdf.begin())]);
  }
  return out;
}

void write_dist_csv(std::ostream& os, const PhotonNumberDist& dist) {
  os << "n,prob,log_prob\n";
  char buf[128];
  for (std::size_t n = 0; n < dist.log_probs.size(); ++n) {
    const double lp = dist.log_probs[n];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, std::exp(lp), lp);
    os << buf;
  }
}

}  // namespace hdgbs
