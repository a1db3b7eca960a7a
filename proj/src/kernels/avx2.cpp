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

#include <immintrin.h>

#include <cstdint>

#include "kernel_impl.hpp"

namespace seclust::kernels::avx2 {
namespace {

// Mirrors log2_ref() lane-wise; keep the two in lockstep.
inline __m256d log2_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  // 2^52 + biased, reinterpreted, minus (2^52 + 1023) gives the exponent exactly.
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
  __m256d exponent = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic)),
                                   _mm256_set1_pd(4503599627371519.0));
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(static_cast<long long>(kMantissaMask))),
      _mm256_set1_epi64x(static_cast<long long>(kOneBits))));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  exponent = _mm256_add_pd(exponent, _mm256_and_pd(big, one));
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);
  __m256d p = _mm256_set1_pd(kLog2Series[kLog2Terms - 1]);
  for (std::size_t k = kLog2Terms - 1; k-- > 0;) {
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(kLog2Series[k]));
  }
  return _mm256_add_pd(exponent, _mm256_mul_pd(s, p));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Zero where `coefficient` is zero, coefficient * factor elsewhere.
inline __m256d masked_product(__m256d coefficient, __m256d factor) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d is_zero = _mm256_cmp_pd(coefficient, zero, _CMP_EQ_OQ);
  return _mm256_blendv_pd(_mm256_mul_pd(coefficient, factor), zero, is_zero);
}

}  // namespace

void log2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, log2_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = log2_ref(x[i]);
}

double dot(const double* a, const double* b, std::size_t dim) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= dim; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= dim; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < dim; ++i) sum += a[i] * b[i];
  return sum;
}

void dot_rows(const double* query, const double* rows, std::size_t row_count,
              std::size_t dim, double* out) {
  for (std::size_t r = 0; r < row_count; ++r) out[r] = dot(query, rows + r * dim, dim);
}

double plogp_sum(const double* weights, std::size_t n, double log2_total) {
  const __m256d total = _mm256_set1_pd(log2_total);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(weights + i);
    const __m256d is_zero = _mm256_cmp_pd(w, zero, _CMP_EQ_OQ);
    // Feed 1.0 into the log for zero lanes so no lane produces NaN.
    const __m256d safe = _mm256_blendv_pd(w, one, is_zero);
    const __m256d term = _mm256_mul_pd(w, _mm256_sub_pd(log2_pd(safe), total));
    acc = _mm256_add_pd(acc, _mm256_blendv_pd(term, zero, is_zero));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
    if (weights[i] != 0.0) sum += weights[i] * (log2_ref(weights[i]) - log2_total);
  }
  return sum;
}

void merge_deltas(const MergeAnchor& anchor, const MergeCandidates& c,
                  double total, double log2_total, double* out) {
  const __m256d anchor_volume = _mm256_set1_pd(anchor.volume);
  const __m256d anchor_log = _mm256_set1_pd(anchor.log2_volume);
  const __m256d own_a = _mm256_set1_pd(anchor.volume - anchor.cut);
  const __m256d total_v = _mm256_set1_pd(total);
  const __m256d total_log = _mm256_set1_pd(log2_total);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= c.count; i += 4) {
    const __m256d volume = _mm256_loadu_pd(c.volume + i);
    const __m256d own_b = _mm256_sub_pd(volume, _mm256_loadu_pd(c.cut + i));
    const __m256d merged_log = log2_pd(_mm256_add_pd(anchor_volume, volume));
    const __m256d ta = masked_product(own_a, _mm256_sub_pd(merged_log, anchor_log));
    const __m256d tb = masked_product(
        own_b, _mm256_sub_pd(merged_log, _mm256_loadu_pd(c.log2_volume + i)));
    const __m256d inter = _mm256_loadu_pd(c.inter + i);
    const __m256d tw_raw = _mm256_mul_pd(_mm256_mul_pd(two, inter),
                                         _mm256_sub_pd(merged_log, total_log));
    const __m256d tw = _mm256_blendv_pd(
        tw_raw, _mm256_setzero_pd(),
        _mm256_cmp_pd(inter, _mm256_setzero_pd(), _CMP_EQ_OQ));
    _mm256_storeu_pd(out + i,
                     _mm256_div_pd(_mm256_add_pd(_mm256_add_pd(ta, tb), tw), total_v));
  }
  for (; i < c.count; ++i) {
    out[i] = merge_delta_ref(anchor, c.volume[i], c.cut[i], c.log2_volume[i],
                             c.inter[i], total, log2_total);
  }
}

}  // namespace seclust::kernels::avx2
