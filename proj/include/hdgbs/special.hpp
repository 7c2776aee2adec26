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

#include <span>

namespace hdgbs {

/// log 2F1(a, b; c; z) for a, b, c > 0 and 0 <= z < 1, by forward term
/// recurrence. Terms are positive, so the sum is accumulated with a running
/// log scale and never overflows.
double log_hyp2f1(double a, double b, double c, double z);

/// log C(x, k) for real x >= k - 1 via lgamma.
double log_binomial(double x, double k);

/// Stable log(sum exp(v)); -inf for an empty span or all -inf.
double log_sum_exp(std::span<const double> v);

}  // namespace hdgbs
