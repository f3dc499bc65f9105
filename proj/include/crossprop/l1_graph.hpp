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

#ifndef CROSSPROP_L1_GRAPH_HPP_
#define CROSSPROP_L1_GRAPH_HPP_

#include <vector>

#include "crossprop/types.hpp"

namespace crossprop {

/// The local reconstruction problem of one point in affinity coordinates:
/// target(j') = a(nbr_j', i) and gram(j', j'') = a(nbr_j', nbr_j'') for the
/// point's k nearest neighbors.
struct NeighborhoodSystem {
  int index = 0;
  std::vector<int> neighborhood;  // sorted ascending
  Vector target;                  // k
  Matrix gram;                    // k x k, symmetric
};

NeighborhoodSystem make_neighborhood_system(
    const AffinityMatrix& aff, const std::vector<std::vector<int>>& neighborhoods,
    int index);

/// Result of the plain sparse reconstruction min ||(coeffs, noise)||_1
/// subject to target = gram * coeffs + noise.
struct SparseReconstruction {
  Vector coefficients;  // k
  Vector noise;         // k
};

SparseReconstruction sparse_reconstruct(const NeighborhoodSystem& nb);

/// Normalized Laplacian of the constraint similarity 1 + Z restricted to a
/// neighborhood, plus the factor F with F^T F equal to the Laplacian after
/// clamping negative eigenvalues at zero.
struct ConstraintLaplacian {
  Matrix laplacian;  // k x k, symmetric
  Matrix factor;     // k x k, sqrt(Sigma) V^T of the clamped spectrum
};

ConstraintLaplacian constraint_laplacian(const ConstraintMatrix& intra,
                                         const std::vector<int>& neighborhood);

/// Result of the constraint-regularized reconstruction: the stacked system
/// [gram I 0; factor 0 I] * (coeffs, noise, penalty) = (target, 0).
struct ConstrainedSparseReconstruction {
  Vector coefficients;   // k
  Vector noise;          // k
  Vector penalty_noise;  // k, absorbs the Laplacian regularizer
};

ConstrainedSparseReconstruction constrained_sparse_reconstruct(
    const NeighborhoodSystem& nb, const ConstraintLaplacian& cl);

/// Builds the L1-graph: each point is sparsely reconstructed in its k-nearest
/// neighborhood and |coefficient| values become edge weights, then the matrix
/// is symmetrized as (W + W^T) / 2. With intra constraints present the
/// reconstruction is regularized through the constraint Laplacian.
WeightMatrix build_l1_graph(const AffinityMatrix& aff, int k,
                            const ConstraintMatrix* intra = nullptr);

}  // namespace crossprop

#endif  // CROSSPROP_L1_GRAPH_HPP_
