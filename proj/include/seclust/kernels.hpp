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

#ifndef SECLUST_KERNELS_HPP_
#define SECLUST_KERNELS_HPP_

// Data-parallel inner loops with a scalar reference and SIMD variants picked
// at runtime.
//
// log2 and merge_deltas are bit-identical across variants: the SIMD code runs
// the same operation sequence lane-wise, and the build disables FMA
// contraction. Reductions (dot, plogp_sum) reassociate across lanes and
// agree with the reference only to rounding.

#include <cstddef>
#include <string_view>

namespace seclust::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// The cluster whose row of merge candidates is being scored.
struct MergeAnchor {
  double volume = 0.0;
  double cut = 0.0;
  double log2_volume = 0.0;
};

// Structure-of-arrays view over `count` candidate clusters. `inter` is the
// edge weight between the anchor and each candidate.
struct MergeCandidates {
  const double* volume = nullptr;
  const double* cut = nullptr;
  const double* log2_volume = nullptr;
  const double* inter = nullptr;
  std::size_t count = 0;
};

struct KernelTable {
  Isa isa;
  // out[i] = log2(x[i]) for positive normal finite x[i].
  void (*log2)(const double* x, double* out, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t dim);
  // out[r] = dot(query, rows + r * dim) for each row.
  void (*dot_rows)(const double* query, const double* rows, std::size_t row_count,
                   std::size_t dim, double* out);
  // sum_i w[i] * (log2 w[i] - log2_total), with zero weights contributing 0.
  double (*plogp_sum)(const double* weights, std::size_t n, double log2_total);
  // out[i] = change in two-level structural entropy from merging the anchor
  // with candidate i, in a graph of volume `total`.
  void (*merge_deltas)(const MergeAnchor& anchor, const MergeCandidates& candidates,
                       double total, double log2_total, double* out);
};

bool supported(Isa isa);
const KernelTable& table(Isa isa);

// The table used by the library. Defaults to the widest supported ISA unless
// the SECLUST_ISA environment variable names another ("scalar", "avx2").
const KernelTable& active();
// Throws std::invalid_argument if `isa` is not supported on this CPU.
void set_active(Isa isa);

// Scalar reference for a single element of log2().
double log2_ref(double x);

// Scalar reference for a single element of merge_deltas(). Every variant's
// merge_deltas matches this bit for bit.
double merge_delta_ref(const MergeAnchor& anchor, double volume, double cut,
                       double log2_volume, double inter, double total,
                       double log2_total);

}  // namespace seclust::kernels

#endif  // SECLUST_KERNELS_HPP_
