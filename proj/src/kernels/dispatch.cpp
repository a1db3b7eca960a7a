// Copyright 2026 The seclust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernel_impl.hpp"

namespace seclust::kernels {
namespace {

constexpr KernelTable kScalarTable{
    Isa::kScalar,    scalar::log2,      scalar::dot,
    scalar::dot_rows, scalar::plogp_sum, scalar::merge_deltas,
};

#if defined(SECLUST_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{
    Isa::kAvx2,    avx2::log2,      avx2::dot,
    avx2::dot_rows, avx2::plogp_sum, avx2::merge_deltas,
};
#endif

const KernelTable* initial_table() {
  if (const char* forced = std::getenv("SECLUST_ISA")) {
    const std::string name(forced);
    if (name == "scalar") return &kScalarTable;
    if (name == "avx2" && supported(Isa::kAvx2)) return &table(Isa::kAvx2);
  }
  return supported(Isa::kAvx2) ? &table(Isa::kAvx2) : &kScalarTable;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(SECLUST_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) {
    throw std::invalid_argument("kernel ISA " + std::string(isa_name(isa)) +
                                " is not supported on this machine");
  }
#if defined(SECLUST_HAVE_AVX2_KERNELS)
  if (isa == Isa::kAvx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void set_active(Isa isa) { active_slot().store(&table(isa), std::memory_order_release); }

}  // namespace seclust::kernels
