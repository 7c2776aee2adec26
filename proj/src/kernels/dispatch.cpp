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

#include <atomic>
#include <cstdlib>
#include <string>

#include "hdgbs/error.hpp"
#include "kernels_internal.hpp"

namespace hdgbs::kernels {

namespace {

const KernelTable kScalar{detail::axpy_scalar, detail::dotu_scalar, detail::rot2_scalar, Isa::scalar};

#if defined(HDGBS_HAVE_AVX2)
const KernelTable kAvx2{detail::axpy_avx2, detail::dotu_avx2, detail::rot2_avx2, Isa::avx2};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() {
  const char* env = std::getenv("HDGBS_ISA");
  if (env && std::string(env) == "scalar") return &kScalar;
  if (const KernelTable* t = avx2_table()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(HDGBS_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

bool available(Isa isa) { return isa == Isa::scalar || avx2_table() != nullptr; }

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  if (isa == Isa::scalar) {
    current().store(&kScalar, std::memory_order_release);
    return;
  }
  const KernelTable* t = avx2_table();
  if (!t) throw ParameterError("AVX2 kernels are not available on this CPU/build");
  current().store(t, std::memory_order_release);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace hdgbs::kernels
