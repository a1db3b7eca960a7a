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

#ifndef SECLUST_METRICS_HPP_
#define SECLUST_METRICS_HPP_

// External clustering agreement measures over two labelings of the same
// items. Labels are opaque; only equality matters. Entropies use natural
// logs internally.

#include <cstdint>
#include <span>
#include <vector>

namespace seclust {

class LabeledPartition {
 public:
  // Throws InputError if the labelings cover different numbers of items.
  LabeledPartition(std::vector<std::uint64_t> predicted, std::vector<std::uint64_t> truth);

  std::size_t size() const { return predicted_.size(); }
  std::span<const std::uint64_t> predicted() const { return predicted_; }
  std::span<const std::uint64_t> truth() const { return truth_; }

 private:
  std::vector<std::uint64_t> predicted_;
  std::vector<std::uint64_t> truth_;
};

// Adjusted Rand index under the permutation model.
double ari(const LabeledPartition& labels);

// Adjusted mutual information with exact hypergeometric expected MI and
// max-normalization. 1 when both sides are a single cluster.
double ami(const LabeledPartition& labels);

// Mutual information over the arithmetic mean of the two entropies.
double nmi(const LabeledPartition& labels);

}  // namespace seclust

#endif  // SECLUST_METRICS_HPP_
