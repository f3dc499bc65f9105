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

#ifndef CROSSPROP_CONSTRAINTS_HPP_
#define CROSSPROP_CONSTRAINTS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "crossprop/types.hpp"

namespace crossprop {

/// Derives inter-view constraints from class labels: +1 where labels match,
/// -1 where they differ. When max_per_item is set, each row keeps a uniform
/// random subset of at most max_per_item entries, deterministic under seed.
ConstraintMatrix inter_constraints_from_labels(
    const std::vector<int>& labels_a, const std::vector<int>& labels_b,
    std::optional<int> max_per_item = std::nullopt, std::uint64_t seed = 42);

/// Intra-view variant over a single label list: the symmetric constraint set
/// with no diagonal entries. Subsampling keeps at most max_per_item sampled
/// partners per row before symmetrization, so the union may exceed it.
ConstraintMatrix intra_constraints_from_labels(
    const std::vector<int>& labels,
    std::optional<int> max_per_item = std::nullopt, std::uint64_t seed = 42);

}  // namespace crossprop

#endif  // CROSSPROP_CONSTRAINTS_HPP_
