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
#include <string>
#include <string_view>
#include <vector>

namespace hdgbs {

/// Photon counts per output mode, n = (n_1, ..., n_M).
struct OutcomePattern {
  std::vector<unsigned> counts;

  std::size_t modes() const { return counts.size(); }
  std::size_t total() const;
  bool collision_free() const;
  bool operator==(const OutcomePattern&) const = default;

  /// Parses "0,1,1,0".
  static OutcomePattern parse(std::string_view text);
  std::string to_string() const;
};

/// All patterns over `modes` modes with total photon number <= max_total,
/// ordered by total and then lexicographically.
std::vector<OutcomePattern> enumerate_patterns(std::size_t modes, std::size_t max_total);

/// Number of patterns enumerate_patterns would return: C(max_total + modes, modes).
double count_patterns(std::size_t modes, std::size_t max_total);

}  // namespace hdgbs
