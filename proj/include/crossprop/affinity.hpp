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

#ifndef CROSSPROP_AFFINITY_HPP_
#define CROSSPROP_AFFINITY_HPP_

#include <vector>

#include "crossprop/types.hpp"

namespace crossprop {

/// Kernel affinities between feature rows. Gaussian:
/// a_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)), with sigma defaulting to the
/// mean distance to each point's k-th nearest neighbor (k = k_for_auto_sigma).
/// Cosine: a_ij = max(0, cos(x_i, x_j)); a zero-norm row is an error. The
/// diagonal carries the kernel self-value (1 for both kernels).
AffinityMatrix compute_affinity(const Matrix& features, const KernelSpec& kernel,
                                int k_for_auto_sigma = 7);

/// For each item, the k indices j != i with the largest a_ij. Ties resolve to
/// the smaller index; each neighborhood is returned sorted ascending.
std::vector<std::vector<int>> knn_neighborhoods(const AffinityMatrix& aff,
                                                int k);

/// k-NN graph weights: w_ij = a_ij when j is in N_k(i) or i is in N_k(j),
/// else 0; symmetrized via max, zero diagonal.
WeightMatrix build_knn_weights(const AffinityMatrix& aff,
                               const std::vector<std::vector<int>>& neighborhoods);

/// (W + W^T) / 2 with the diagonal forced to zero. Negative entries are an
/// error.
WeightMatrix symmetrize(const SparseMatrix& raw);

/// S = D^{-1/2} W D^{-1/2}; rows and columns of zero-degree nodes stay zero.
NormalizedSimilarity symmetric_normalize(const WeightMatrix& weights);

}  // namespace crossprop

#endif  // CROSSPROP_AFFINITY_HPP_
