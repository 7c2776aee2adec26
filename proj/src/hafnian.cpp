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

#include "hdgbs/hafnian.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "hdgbs/error.hpp"
#include "hdgbs/kernels.hpp"

namespace hdgbs {

namespace {

constexpr std::size_t kChunks = 256;

// Binary-counter pairwise summation. The result depends only on the order of
// add() calls.
class PairwiseSum {
 public:
  void add(cplx x) {
    std::uint32_t level = 0;
    while (!stack_.empty() && stack_.back().level == level) {
      x = stack_.back().value + x;
      stack_.pop_back();
      ++level;
    }
    stack_.push_back({x, level});
  }

  cplx total() const {
    cplx s{};
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) s += it->value;
    return s;
  }

 private:
  struct Entry {
    cplx value;
    std::uint32_t level;
  };
  std::vector<Entry> stack_;
};

cplx tree_sum(const std::vector<cplx>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

void require_square_symmetric(const ComplexMatrix& b) {
  if (!b.square()) throw DimensionError("Hafnian needs a square matrix");
  if (!is_symmetric(b)) throw ContractViolation("Hafnian needs a symmetric matrix");
}

cplx enum_rec(const ComplexMatrix& b, std::uint64_t remaining) {
  if (remaining == 0) return 1.0;
  const int first = std::countr_zero(remaining);
  remaining &= remaining - 1;
  cplx sum{};
  for (std::uint64_t rest = remaining; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    sum += b(first, j) * enum_rec(b, remaining & ~(std::uint64_t{1} << j));
  }
  return sum;
}

// Scratch space for one worker of the power-trace evaluation.
class PowerTraceWorker {
 public:
  PowerTraceWorker(const ComplexMatrix& a, std::size_t pairs)
      : a_(a),
        pairs_(pairs),
        n_(a.rows()),
        kern_(kernels::active()),
        h_mat_(n_ * n_),
        v_(n_),
        conj_v_(n_),
        w_(n_),
        gamma_(n_ + 1),
        coeff_((n_ + 1) * (pairs + 1)),
        series_(pairs + 1),
        idx_(n_) {}

  // (-1)^{n-|S|} [lambda^n] det(I - lambda B_S)^{-1/2}, with B_S the
  // pair-swapped principal sub-matrix selected by `mask`.
  cplx summand(std::uint64_t mask) {
    std::size_t m = 0;
    for (std::uint64_t bits = mask; bits; bits &= bits - 1) {
      const std::size_t p = std::size_t(std::countr_zero(bits));
      idx_[m++] = 2 * p;
      idx_[m++] = 2 * p + 1;
    }
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) h_mat_[r * m + c] = a_(idx_[r], idx_[c] ^ 1);

    hessenberg(m);
    char_poly(m);
    const cplx value = half_power_coefficient(m);
    const std::size_t parity = pairs_ - m / 2;
    return (parity & 1) ? -value : value;
  }

 private:
  void hessenberg(std::size_t m) {
    cplx* h = h_mat_.data();
    // Columns whose tail is below rounding level are left as they are;
    // reflecting them would divide by an underflowing norm.
    double scale = 0.0;
    for (std::size_t i = 0; i < m * m; ++i) scale += std::norm(h[i]);
    const double negligible = 1e-32 * scale;
    for (std::size_t k = 0; k + 2 < m; ++k) {
      const std::size_t len = m - k - 1;
      double tail = 0.0;
      for (std::size_t i = 1; i < len; ++i) tail += std::norm(h[(k + 1 + i) * m + k]);
      if (tail <= negligible) continue;
      const cplx x0 = h[(k + 1) * m + k];
      const double ax0 = std::abs(x0);
      const double alpha = std::sqrt(tail + ax0 * ax0);
      const cplx phase = ax0 > 0.0 ? x0 / ax0 : cplx{1.0, 0.0};
      for (std::size_t i = 0; i < len; ++i) v_[i] = h[(k + 1 + i) * m + k];
      v_[0] += phase * alpha;
      const double tau = 1.0 / (alpha * (alpha + ax0));  // 2 / |v|^2
      for (std::size_t i = 0; i < len; ++i) conj_v_[i] = std::conj(v_[i]);

      // Left: rows k+1.., columns k..
      const std::size_t width = m - k;
      std::fill_n(w_.begin(), width, cplx{});
      for (std::size_t i = 0; i < len; ++i) kern_.axpy(conj_v_[i], h + (k + 1 + i) * m + k, w_.data(), width);
      for (std::size_t i = 0; i < len; ++i)
        kern_.axpy(-tau * v_[i], w_.data() + 1, h + (k + 1 + i) * m + k + 1, width - 1);
      h[(k + 1) * m + k] = -phase * alpha;
      for (std::size_t i = 1; i < len; ++i) h[(k + 1 + i) * m + k] = 0.0;

      // Right: all rows, columns k+1..
      for (std::size_t r = 0; r < m; ++r) {
        cplx* row = h + r * m + k + 1;
        const cplx s = kern_.dotu(row, v_.data(), len);
        kern_.axpy(-tau * s, conj_v_.data(), row, len);
      }
    }
  }

  // coeff(k, j): coefficient j of det(lambda I - H_k) for the leading k x k
  // block, kept only up to degree `pairs_`.
  cplx& coeff(std::size_t k, std::size_t j) { return coeff_[k * (pairs_ + 1) + j]; }

  void char_poly(std::size_t m) {
    const cplx* h = h_mat_.data();
    const std::size_t top = pairs_;
    coeff(0, 0) = 1.0;
    for (std::size_t j = 1; j <= top; ++j) coeff(0, j) = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
      const cplx hkk = h[(k - 1) * m + (k - 1)];
      cplx beta = 1.0;
      for (std::size_t i = 1; i < k; ++i) {
        beta *= h[(k - i) * m + (k - i - 1)];
        gamma_[i] = h[(k - 1 - i) * m + (k - 1)] * beta;
      }
      coeff(k, 0) = 1.0;
      const std::size_t jmax = std::min(k, top);
      for (std::size_t j = 1; j <= jmax; ++j) {
        cplx val = (j <= k - 1 ? coeff(k - 1, j) : cplx{}) - hkk * coeff(k - 1, j - 1);
        for (std::size_t i = 1; i < j; ++i) val -= gamma_[i] * coeff(k - 1 - i, j - 1 - i);
        coeff(k, j) = val;
      }
      for (std::size_t j = jmax + 1; j <= top; ++j) coeff(k, j) = 0.0;
    }
  }

  // q(lambda) = det(I - lambda H) = sum_j coeff(m, j) lambda^j;
  // h = q^{-1/2} satisfies t h_t = -sum_j q_j ((t - j) + j/2) h_{t-j}.
  cplx half_power_coefficient(std::size_t m) {
    const std::size_t n = pairs_;
    series_[0] = 1.0;
    for (std::size_t t = 1; t <= n; ++t) {
      cplx s{};
      for (std::size_t j = 1; j <= std::min(t, m); ++j)
        s += coeff(m, j) * (double(t - j) + 0.5 * double(j)) * series_[t - j];
      series_[t] = -s / double(t);
    }
    return series_[n];
  }

  const ComplexMatrix& a_;
  std::size_t pairs_;
  std::size_t n_;
  const kernels::KernelTable& kern_;
  std::vector<cplx> h_mat_, v_, conj_v_, w_, gamma_, coeff_, series_;
  std::vector<std::size_t> idx_;
};

}  // namespace

cplx hafnian_enum(const ComplexMatrix& b, std::size_t limit) {
  require_square_symmetric(b);
  const std::size_t n = b.rows();
  if (n > limit || n > 63)
    throw ResourceError("hafnian_enum: N=" + std::to_string(n) + " exceeds enumeration limit " + std::to_string(limit));
  if (n == 0) return 1.0;
  if (n % 2) return 0.0;
  return enum_rec(b, (std::uint64_t{1} << n) - 1);
}

cplx hafnian_fast(const ComplexMatrix& b, const HafnianOptions& opts) {
  require_square_symmetric(b);
  const std::size_t n = b.rows();
  if (n == 0) return 1.0;
  if (n % 2) return 0.0;
  if (n > opts.fast_limit || n > 124)
    throw ResourceError("hafnian_fast: N=" + std::to_string(n) + " exceeds limit " + std::to_string(opts.fast_limit));

  const std::size_t pairs = n / 2;
  const std::uint64_t total = std::uint64_t{1} << pairs;
  const std::size_t chunks = std::size_t(std::min<std::uint64_t>(total, kChunks));
  const std::uint64_t per_chunk = (total + chunks - 1) / chunks;
  std::vector<cplx> partial(chunks);

  auto run_chunk = [&](PowerTraceWorker& worker, std::size_t c) {
    PairwiseSum acc;
    const std::uint64_t lo = c * per_chunk;
    const std::uint64_t hi = std::min(total, lo + per_chunk);
    for (std::uint64_t mask = lo; mask < hi; ++mask) acc.add(worker.summand(mask));
    partial[c] = acc.total();
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, unsigned(chunks)));
  if (workers == 1) {
    PowerTraceWorker worker(b, pairs);
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(worker, c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        PowerTraceWorker worker(b, pairs);
        for (std::size_t c; (c = next.fetch_add(1)) < chunks;) run_chunk(worker, c);
      });
  }
  return tree_sum(partial, 0, chunks);
}

HafnianResult hafnian(const ComplexMatrix& b, HafnianMethod method, const HafnianOptions& opts) {
  const cplx v = method == HafnianMethod::enumeration ? hafnian_enum(b, opts.enumeration_limit) : hafnian_fast(b, opts);
  return {v, method, b.rows()};
}

cplx permanent(const ComplexMatrix& g, std::size_t limit) {
  if (!g.square()) throw DimensionError("permanent needs a square matrix");
  const std::size_t n = g.rows();
  if (n > limit || n > 62)
    throw ResourceError("permanent: n=" + std::to_string(n) + " exceeds limit " + std::to_string(limit));
  if (n == 0) return 1.0;

  // Ryser: Per = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} g_ij, subsets in
  // Gray-code order so each step adds or removes one column.
  std::vector<cplx> row_sums(n, cplx{});
  std::vector<bool> in_set(n, false);
  PairwiseSum acc;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const std::size_t col = std::size_t(std::countr_zero(k));
    const double sign = in_set[col] ? -1.0 : 1.0;
    in_set[col] = !in_set[col];
    for (std::size_t i = 0; i < n; ++i) row_sums[i] += sign * g(i, col);
    cplx prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) prod *= row_sums[i];
    const std::size_t gray = std::size_t(std::popcount(k ^ (k >> 1)));
    acc.add(((n - gray) % 2) ? -prod : prod);
  }
  return acc.total();
}

cplx permanent_via_hafnian(const ComplexMatrix& g, const HafnianOptions& opts) {
  if (!g.square()) throw DimensionError("permanent_via_hafnian needs a square matrix");
  const std::size_t n = g.rows();
  ComplexMatrix block(2 * n, 2 * n);
  auto e = block.mutable_entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      e[i * 2 * n + (n + j)] = g(i, j);
      e[(n + j) * 2 * n + i] = g(i, j);
    }
  block.set_flags(ComplexMatrix::kSymmetric);
  return hafnian_fast(block, opts);
}

}  // namespace hdgbs
