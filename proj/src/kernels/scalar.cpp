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

#include <bit>
#include <cstdint>

#include "kernel_impl.hpp"

namespace seclust::kernels {

double log2_ref(double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  auto exponent = static_cast<std::int64_t>(bits >> 52) - 1023;
  double m = std::bit_cast<double>((bits & kMantissaMask) | kOneBits);
  if (m > kSqrt2) {
    m *= 0.5;
    exponent += 1;
  }
  const double s = (m - 1.0) / (m + 1.0);
  const double z = s * s;
  double p = kLog2Series[kLog2Terms - 1];
  for (std::size_t k = kLog2Terms - 1; k-- > 0;) p = p * z + kLog2Series[k];
  return static_cast<double>(exponent) + s * p;
}

double merge_delta_ref(const MergeAnchor& anchor, double volume, double cut,
                       double log2_volume, double inter, double total,
                       double log2_total) {
  // Closed form: (v1-g1)(Ln-L1) + (v2-g2)(Ln-L2) + 2w(Ln-LV), all over V, with
  // Ln = log2(v1+v2). Terms with a zero coefficient are 0 (0 log 0 = 0).
  const double own_a = anchor.volume - anchor.cut;
  const double own_b = volume - cut;
  const double merged_log = log2_ref(anchor.volume + volume);
  const double ta = own_a == 0.0 ? 0.0 : own_a * (merged_log - anchor.log2_volume);
  const double tb = own_b == 0.0 ? 0.0 : own_b * (merged_log - log2_volume);
  const double tw = inter == 0.0 ? 0.0 : (2.0 * inter) * (merged_log - log2_total);
  return ((ta + tb) + tw) / total;
}

namespace scalar {

void log2(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = log2_ref(x[i]);
}

double dot(const double* a, const double* b, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) sum += a[i] * b[i];
  return sum;
}

void dot_rows(const double* query, const double* rows, std::size_t row_count,
              std::size_t dim, double* out) {
  for (std::size_t r = 0; r < row_count; ++r) out[r] = dot(query, rows + r * dim, dim);
}

double plogp_sum(const double* weights, std::size_t n, double log2_total) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] != 0.0) sum += weights[i] * (log2_ref(weights[i]) - log2_total);
  }
  return sum;
}

void merge_deltas(const MergeAnchor& anchor, const MergeCandidates& c,
                  double total, double log2_total, double* out) {
  for (std::size_t i = 0; i < c.count; ++i) {
    out[i] = merge_delta_ref(anchor, c.volume[i], c.cut[i], c.log2_volume[i],
                             c.inter[i], total, log2_total);
  }
}

}  // namespace scalar
}  // namespace seclust::kernels
