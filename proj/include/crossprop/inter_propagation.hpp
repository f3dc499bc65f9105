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

#ifndef CROSSPROP_INTER_PROPAGATION_HPP_
#define CROSSPROP_INTER_PROPAGATION_HPP_

#include <vector>

#include "crossprop/types.hpp"

namespace crossprop {

/// Convergence record of one inter-view propagation run.
struct InterPropagationLog {
  std::vector<double> outer_residuals;        // joint relative change per round
  std::vector<int> inner_iterations_a;        // per round, row-view diffusion
  std::vector<int> inner_iterations_b;        // per round, column-view diffusion
  std::vector<double> first_round_inner_residuals;
  Matrix field_a;  // per-view solution over the row view's graph
  Matrix field_b;  // per-view solution over the column view's graph
  int outer_iterations = 0;
};

/// Propagates inter-view constraints by alternating label-propagation solves:
/// the row-view iteration F_a <- alpha_a S_a F_a + (1-alpha_a)((1-beta) Z +
/// beta F_b*) and the column-view analogue with S_b applied from the right,
/// each run to inner_tol, alternating until the joint relative change falls
/// below outer_tol. Returns (F_a* + F_b*) / 2.
///
/// Throws NoConvergenceError (with the residual trail) when an iteration cap
/// is exceeded and InvalidInputError on dimension mismatches.
PropagationField propagate_inter(const NormalizedSimilarity& similarity_a,
                                 const NormalizedSimilarity& similarity_b,
                                 const ConstraintMatrix& constraints,
                                 const PropagationParams& params,
                                 InterPropagationLog* log = nullptr);

/// Reference solver that alternates the exact per-view solves
/// F_a* = (I + mu_a L_a)^{-1} ((1-beta) Z + beta F_b*) and
/// F_b* = ((1-beta) Z + beta F_a*) (I + mu_b L_b)^{-1}, with
/// mu = alpha / (1 - alpha) and L = I - S, using dense factorizations.
/// Refuses instances with more than 2000 items per view.
PropagationField closed_form_inter(const NormalizedSimilarity& similarity_a,
                                   const NormalizedSimilarity& similarity_b,
                                   const ConstraintMatrix& constraints,
                                   const PropagationParams& params,
                                   InterPropagationLog* log = nullptr);

}  // namespace crossprop

#endif  // CROSSPROP_INTER_PROPAGATION_HPP_
