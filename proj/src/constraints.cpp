// Copyright 2026 The crossprop Authors
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

#include "crossprop/constraints.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "crossprop/rng.hpp"

namespace crossprop {
namespace {

// Picks `keep` distinct values from 0..pool-1, uniformly, via a partial
// Fisher-Yates pass; returns them sorted.
std::vector<int> sample_without_replacement(int pool, int keep, Rng& rng) {
  std::vector<int> idx(pool);
  std::iota(idx.begin(), idx.end(), 0);
  for (int t = 0; t < keep; ++t) {
    const int j = rng.uniform_int(t, pool - 1);
    std::swap(idx[t], idx[j]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

ConstraintMatrix inter_constraints_from_labels(const std::vector<int>& labels_a,
                                               const std::vector<int>& labels_b,
                                               std::optional<int> max_per_item,
                                               std::uint64_t seed) {
  if (labels_a.empty() || labels_b.empty()) {
    throw InvalidInputError("constraints_from_labels: empty label list");
  }
  if (max_per_item && *max_per_item < 1) {
    throw InvalidInputError("max_per_item must be at least 1");
  }
  const int n = static_cast<int>(labels_a.size());
  const int m = static_cast<int>(labels_b.size());
  Rng rng(seed);
  std::vector<ConstraintEntry> entries;
  for (int i = 0; i < n; ++i) {
    if (max_per_item && *max_per_item < m) {
      for (int j : sample_without_replacement(m, *max_per_item, rng)) {
        entries.push_back({i, j, labels_a[i] == labels_b[j] ? 1 : -1});
      }
    } else {
      for (int j = 0; j < m; ++j) {
        entries.push_back({i, j, labels_a[i] == labels_b[j] ? 1 : -1});
      }
    }
  }
  return ConstraintMatrix(ConstraintKind::kInter, n, m, std::move(entries));
}

ConstraintMatrix intra_constraints_from_labels(const std::vector<int>& labels,
                                               std::optional<int> max_per_item,
                                               std::uint64_t seed) {
  if (labels.empty()) {
    throw InvalidInputError("constraints_from_labels: empty label list");
  }
  if (max_per_item && *max_per_item < 1) {
    throw InvalidInputError("max_per_item must be at least 1");
  }
  const int n = static_cast<int>(labels.size());
  std::vector<ConstraintEntry> entries;
  if (!max_per_item || *max_per_item >= n - 1) {
    entries.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int sign = labels[i] == labels[j] ? 1 : -1;
        entries.push_back({i, j, sign});
        entries.push_back({j, i, sign});
      }
    }
    return ConstraintMatrix(ConstraintKind::kIntra, n, n, std::move(entries));
  }

  Rng rng(seed);
  std::set<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    // Sample partners from the n-1 non-self indices.
    for (int r : sample_without_replacement(n - 1, *max_per_item, rng)) {
      const int j = r < i ? r : r + 1;
      pairs.emplace(std::min(i, j), std::max(i, j));
    }
  }
  entries.reserve(2 * pairs.size());
  for (const auto& [i, j] : pairs) {
    const int sign = labels[i] == labels[j] ? 1 : -1;
    entries.push_back({i, j, sign});
    entries.push_back({j, i, sign});
  }
  return ConstraintMatrix(ConstraintKind::kIntra, n, n, std::move(entries));
}

}  // namespace crossprop
