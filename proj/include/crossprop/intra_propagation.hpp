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

#ifndef CROSSPROP_INTRA_PROPAGATION_HPP_
#define CROSSPROP_INTRA_PROPAGATION_HPP_

#include <vector>

#include "crossprop/types.hpp"

namespace crossprop {

/// Parameters of single-view propagation. In the underlying objective,
/// alpha = mu / (1 + mu + gamma) and beta = gamma / (1 + gamma).
struct IntraParams {
  double alpha = 0.05;
  double beta = 0.5;
  double inner_tol = 1e-6;
  double outer_tol = 1e-4;
  int max_inner_iters = 1000;
  int max_outer_iters = 300;

  void validate() const;
};

struct IntraPropagationLog {
  std::vector<double> outer_residuals;
  std::vector<int> inner_iterations_vertical;
  std::vector<int> inner_iterations_horizontal;
  std::vector<double> first_round_inner_residuals;
  Matrix vertical;      // column-direction solution F_v*
  Matrix horizontal;    // row-direction solution F_h*
  Matrix unnormalized;  // (F_v* + F_h*) / 2 before max-normalization
  int outer_iterations = 0;
};

/// Propagates intra-view constraints over one graph by the same alternating
/// scheme as the inter-view solver, with the similarity applied from the left
/// for the vertical pass and from the right for the horizontal pass. The
/// averaged solution is divided by its maximum entry when that maximum is
/// positive and then clamped to [-1, 1].
PropagationField propagate_intra(const NormalizedSimilarity& similarity,
                                 const ConstraintMatrix& constraints,
                                 const IntraParams& params,
                                 IntraPropagationLog* log = nullptr);

/// Constrained weight adjustment: on the existing edge set,
///   w~ = 1 - (1 - f)(1 - w)   when f >= 0,
///   w~ = (1 + f) w            when f < 0,
/// where f is read from the symmetrized field. The input weights are divided
/// by their maximum entry first when that maximum exceeds 1; field entries
/// must lie in [-1, 1].
WeightMatrix adjust_weights_cwa(const WeightMatrix& weights,
                                const PropagationField& field);

}  // namespace crossprop

#endif  // CROSSPROP_INTRA_PROPAGATION_HPP_
