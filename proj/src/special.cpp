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

#include "hdgbs/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdgbs/error.hpp"

namespace hdgbs {

namespace {
constexpr double kRescale = 1e200;
constexpr std::size_t kMaxTerms = 1'000'000;
}  // namespace

double log_hyp2f1(double a, double b, double c, double z) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw ParameterError("log_hyp2f1 needs positive a, b, c");
  if (!(z >= 0.0 && z < 1.0)) throw ParameterError("log_hyp2f1 needs 0 <= z < 1");
  if (z == 0.0) return 0.0;

  double log_scale = 0.0;
  double sum = 1.0;
  double term = 1.0;
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    const double kk = double(k);
    const double ratio = (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
    term *= ratio;
    sum += term;
    if (sum > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      log_scale += std::log(kRescale);
    }
    // Later ratios never exceed max(ratio, z), which bounds the tail
    // geometrically once that is below one.
    const double rho = std::max(ratio, z);
    if (rho < 1.0 && term * rho / (1.0 - rho) < 1e-16 * sum) break;
  }
  return log_scale + std::log(sum);
}

double log_binomial(double x, double k) {
  return std::lgamma(x + 1.0) - std::lgamma(k + 1.0) - std::lgamma(x - k + 1.0);
}

double log_sum_exp(std::span<const double> v) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : v) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

}  // namespace hdgbs
