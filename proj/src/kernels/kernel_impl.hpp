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

#ifndef SECLUST_SRC_KERNELS_KERNEL_IMPL_HPP_
#define SECLUST_SRC_KERNELS_KERNEL_IMPL_HPP_

#include <array>
#include <cstddef>
#include <cstdint>

#include "seclust/kernels.hpp"

namespace seclust::kernels {

// log2(x) = e + s * P(s^2) with x = 2^e * m, m in [sqrt(1/2), sqrt(2)) and
// s = (m - 1) / (m + 1); P is the atanh series scaled by 2 / ln 2. Eleven
// terms reach double precision for |s| <= 3 - 2 sqrt(2).
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;
inline constexpr std::size_t kLog2Terms = 11;
inline constexpr std::array<double, kLog2Terms> kLog2Series = [] {
  std::array<double, kLog2Terms> c{};
  for (std::size_t k = 0; k < kLog2Terms; ++k) {
    c[k] = 2.0 / (static_cast<double>(2 * k + 1) * kLn2);
  }
  return c;
}();
inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr std::uint64_t kMantissaMask = 0x000FFFFFFFFFFFFFull;
inline constexpr std::uint64_t kOneBits = 0x3FF0000000000000ull;

namespace scalar {
void log2(const double* x, double* out, std::size_t n);
double dot(const double* a, const double* b, std::size_t dim);
void dot_rows(const double* query, const double* rows, std::size_t row_count,
              std::size_t dim, double* out);
double plogp_sum(const double* weights, std::size_t n, double log2_total);
void merge_deltas(const MergeAnchor& anchor, const MergeCandidates& candidates,
                  double total, double log2_total, double* out);
}  // namespace scalar

#if defined(SECLUST_HAVE_AVX2_KERNELS)
namespace avx2 {
void log2(const double* x, double* out, std::size_t n);
double dot(const double* a, const double* b, std::size_t dim);
void dot_rows(const double* query, const double* rows, std::size_t row_count,
              std::size_t dim, double* out);
double plogp_sum(const double* weights, std::size_t n, double log2_total);
void merge_deltas(const MergeAnchor& anchor, const MergeCandidates& candidates,
                  double total, double log2_total, double* out);
}  // namespace avx2
#endif

}  // namespace seclust::kernels

#endif  // SECLUST_SRC_KERNELS_KERNEL_IMPL_HPP_
