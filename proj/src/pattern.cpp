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

#include "hdgbs/pattern.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "hdgbs/error.hpp"

namespace hdgbs {

std::size_t OutcomePattern::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

bool OutcomePattern::collision_free() const {
  for (unsigned c : counts)
    if (c > 1) return false;
  return true;
}

OutcomePattern OutcomePattern::parse(std::string_view text) {
  OutcomePattern p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParameterError("bad pattern entry '" + std::string(tok) + "'");
    p.counts.push_back(v);
    pos = comma + 1;
  }
  return p;
}

std::string OutcomePattern::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(counts[i]);
  }
  return s;
}

namespace {

void fill(std::vector<unsigned>& cur, std::size_t mode, std::size_t remaining, std::vector<OutcomePattern>& out) {
  if (mode + 1 == cur.size()) {
    cur[mode] = static_cast<unsigned>(remaining);
    out.push_back({cur});
    return;
  }
  for (std::size_t k = remaining + 1; k-- > 0;) {
    cur[mode] = static_cast<unsigned>(k);
    fill(cur, mode + 1, remaining - k, out);
  }
}

}  // namespace

std::vector<OutcomePattern> enumerate_patterns(std::size_t modes, std::size_t max_total) {
  std::vector<OutcomePattern> out;
  if (modes == 0) {
    out.push_back({});
    return out;
  }
  std::vector<unsigned> cur(modes, 0);
  for (std::size_t n = 0; n <= max_total; ++n) fill(cur, 0, n, out);
  return out;
}

double count_patterns(std::size_t modes, std::size_t max_total) {
  // C(max_total + modes, modes)
  double c = 1.0;
  for (std::size_t i = 1; i <= modes; ++i) c = c * double(max_total + i) / double(i);
  return std::round(c);
}

}  // namespace hdgbs
