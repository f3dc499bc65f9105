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

#include "crossprop/graph_pipeline.hpp"

#include <string>

#include "crossprop/affinity.hpp"
#include "crossprop/l1_graph.hpp"

namespace crossprop {

AffinityMatrix view_affinity(const ViewDataset& ds, const KernelSpec& kernel,
                             int k) {
  if (ds.affinity) return *ds.affinity;
  if (!ds.features) {
    throw InvalidInputError("view has neither features nor affinity");
  }
  if (kernel.type == KernelType::kPrecomputed) {
    throw InvalidInputError(
        "precomputed kernel requested but the view provides only features");
  }
  return compute_affinity(*ds.features, kernel, k);
}

ViewGraph build_graph_from_affinity(const AffinityMatrix& aff,
                                    const GraphSpec& spec,
                                    const ConstraintMatrix* intra,
                                    const IntraParams& intra_params) {
  spec.validate(aff.rows());
  WeightMatrix weights;
  switch (spec.construction) {
    case GraphConstruction::kKnn:
      weights = build_knn_weights(aff, knn_neighborhoods(aff, spec.k));
      break;
    case GraphConstruction::kSr:
      weights = build_l1_graph(aff, spec.k);
      break;
    case GraphConstruction::kCwa: {
      if (!intra) {
        throw InvalidInputError("cwa construction requires intra constraints");
      }
      const WeightMatrix base =
          build_knn_weights(aff, knn_neighborhoods(aff, spec.k));
      const PropagationField field =
          propagate_intra(symmetric_normalize(base), *intra, intra_params);
      weights = adjust_weights_cwa(base, field);
      break;
    }
    case GraphConstruction::kCsr:
      if (!intra) {
        throw InvalidInputError("csr construction requires intra constraints");
      }
      weights = build_l1_graph(aff, spec.k, intra);
      break;
  }
  ViewGraph graph;
  graph.similarity = symmetric_normalize(weights);
  graph.weights = std::move(weights);
  return graph;
}

ViewGraph build_view_graph(const ViewDataset& ds, const GraphSpec& spec,
                           const ConstraintMatrix* intra,
                           const IntraParams& intra_params) {
  return build_graph_from_affinity(view_affinity(ds, spec.kernel, spec.k), spec,
                                   intra, intra_params);
}

}  // namespace crossprop
