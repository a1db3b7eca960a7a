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

#include "seclust/metrics.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>

#include "seclust/error.hpp"

namespace seclust {
namespace {

struct Contingency {
  std::int64_t total = 0;
  std::vector<std::int64_t> rows;  // predicted cluster sizes
  std::vector<std::int64_t> cols;  // true cluster sizes
  // Non-zero cells only, keyed by (row, col).
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> cells;

  // Same clusters up to relabeling.
  bool is_matching() const {
    return cells.size() == rows.size() && cells.size() == cols.size();
  }
};

std::vector<std::size_t> dense_labels(std::span<const std::uint64_t> labels,
                                      std::size_t& count) {
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = index.emplace(labels[i], index.size()).first->second;
  }
  count = index.size();
  return out;
}

Contingency contingency(const LabeledPartition& labels) {
  Contingency c;
  std::size_t row_count = 0;
  std::size_t col_count = 0;
  const auto rows = dense_labels(labels.predicted(), row_count);
  const auto cols = dense_labels(labels.truth(), col_count);
  c.total = static_cast<std::int64_t>(labels.size());
  c.rows.assign(row_count, 0);
  c.cols.assign(col_count, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++c.rows[rows[i]];
    ++c.cols[cols[i]];
    ++c.cells[{rows[i], cols[i]}];
  }
  return c;
}

long double pairs(std::int64_t n) { return static_cast<long double>(n) * (n - 1) / 2; }

double entropy(const std::vector<std::int64_t>& sizes, std::int64_t total) {
  const double log_total = std::log(static_cast<double>(total));
  double h = 0.0;
  for (std::int64_t s : sizes) {
    const double p = static_cast<double>(s) / static_cast<double>(total);
    h -= p * (std::log(static_cast<double>(s)) - log_total);
  }
  return h;
}

double mutual_information(const Contingency& c) {
  const double n = static_cast<double>(c.total);
  const double log_n = std::log(n);
  double mi = 0.0;
  for (const auto& [cell, count] : c.cells) {
    const double nij = static_cast<double>(count);
    mi += (nij / n) * (std::log(nij) + log_n - std::log(static_cast<double>(c.rows[cell.first])) -
                       std::log(static_cast<double>(c.cols[cell.second])));
  }
  return std::max(mi, 0.0);
}

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

// Expected mutual information between two random labelings with the same
// cluster sizes, under the hypergeometric model.
double expected_mutual_information(const Contingency& c) {
  const std::int64_t n = c.total;
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  const double gln_n1 = log_gamma(nd + 1.0);
  double emi = 0.0;
  for (std::int64_t a : c.rows) {
    const double ad = static_cast<double>(a);
    for (std::int64_t b : c.cols) {
      const double bd = static_cast<double>(b);
      const double gln_fixed = log_gamma(ad + 1.0) + log_gamma(bd + 1.0) +
                               log_gamma(nd - ad + 1.0) + log_gamma(nd - bd + 1.0) - gln_n1;
      const std::int64_t start = std::max<std::int64_t>(1, a + b - n);
      const std::int64_t end = std::min(a, b);
      for (std::int64_t nij = start; nij <= end; ++nij) {
        const double x = static_cast<double>(nij);
        const double term2 = log_n + std::log(x) - std::log(ad) - std::log(bd);
        const double gln = gln_fixed - log_gamma(x + 1.0) - log_gamma(ad - x + 1.0) -
                           log_gamma(bd - x + 1.0) - log_gamma(nd - ad - bd + x + 1.0);
        emi += (x / nd) * term2 * std::exp(gln);
      }
    }
  }
  return emi;
}

}  // namespace

LabeledPartition::LabeledPartition(std::vector<std::uint64_t> predicted,
                                   std::vector<std::uint64_t> truth)
    : predicted_(std::move(predicted)), truth_(std::move(truth)) {
  if (predicted_.size() != truth_.size()) {
    throw InputError("labelings cover different item counts (" +
                     std::to_string(predicted_.size()) + " vs " +
                     std::to_string(truth_.size()) + ")");
  }
  if (predicted_.empty()) throw InputError("labelings are empty");
}

double ari(const LabeledPartition& labels) {
  const Contingency c = contingency(labels);
  if (c.is_matching()) return 1.0;
  long double index = 0;
  for (const auto& [cell, count] : c.cells) index += pairs(count);
  long double sum_rows = 0;
  for (std::int64_t a : c.rows) sum_rows += pairs(a);
  long double sum_cols = 0;
  for (std::int64_t b : c.cols) sum_cols += pairs(b);
  const long double total_pairs = pairs(c.total);
  const long double expected = sum_rows * sum_cols / total_pairs;
  const long double maximum = (sum_rows + sum_cols) / 2;
  if (maximum == expected) return 1.0;
  return static_cast<double>((index - expected) / (maximum - expected));
}

double ami(const LabeledPartition& labels) {
  const Contingency c = contingency(labels);
  if (c.is_matching()) return 1.0;
  const double mi = mutual_information(c);
  const double emi = expected_mutual_information(c);
  const double normalizer = std::max(entropy(c.rows, c.total), entropy(c.cols, c.total));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double denominator = normalizer - emi;
  denominator = denominator < 0.0 ? std::min(denominator, -eps) : std::max(denominator, eps);
  return (mi - emi) / denominator;
}

double nmi(const LabeledPartition& labels) {
  const Contingency c = contingency(labels);
  if (c.is_matching()) return 1.0;
  const double mi = mutual_information(c);
  if (mi == 0.0) return 0.0;
  const double normalizer =
      (entropy(c.rows, c.total) + entropy(c.cols, c.total)) / 2.0;
  return std::clamp(mi / std::max(normalizer, std::numeric_limits<double>::epsilon()),
                    0.0, 1.0);
}

}  // namespace seclust
