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

#ifndef CROSSPROP_GRAPH_PIPELINE_HPP_
#define CROSSPROP_GRAPH_PIPELINE_HPP_

#include "crossprop/intra_propagation.hpp"
#include "crossprop/types.hpp"

namespace crossprop {

struct ViewGraph {
  WeightMatrix weights;
  NormalizedSimilarity similarity;
};

/// The view's affinity matrix: the precomputed one when present, otherwise
/// the kernel applied to features (k feeds the auto-sigma rule).
AffinityMatrix view_affinity(const ViewDataset& ds, const KernelSpec& kernel,
                             int k);

/// Builds a graph over one view from its affinity matrix:
///   knn  plain k-NN weights,
///   sr   L1-graph by sparse reconstruction,
///   cwa  k-NN weights reweighted by propagated intra constraints,
///   csr  L1-graph with the constraint-Laplacian regularizer.
/// cwa and csr require intra constraints (InvalidInputError otherwise).
ViewGraph build_graph_from_affinity(const AffinityMatrix& aff,
                                    const GraphSpec& spec,
                                    const ConstraintMatrix* intra,
                                    const IntraParams& intra_params);

/// Convenience overload computing the affinity from the dataset first.
ViewGraph build_view_graph(const ViewDataset& ds, const GraphSpec& spec,
                           const ConstraintMatrix* intra,
                           const IntraParams& intra_params);

}  // namespace crossprop

#endif  // CROSSPROP_GRAPH_PIPELINE_HPP_
