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

#include "crossprop/intra_propagation.hpp"

#include <algorithm>
#include <string>

#include "propagation_common.hpp"

namespace crossprop {

void IntraParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidInputError("intra alpha must lie in (0, 1)");
  }
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw InvalidInputError("intra beta must lie in [0, 1)");
  }
  if (!(inner_tol > 0.0) || !(outer_tol > 0.0)) {
    throw InvalidInputError("tolerances must be positive");
  }
  if (max_inner_iters < 1 || max_outer_iters < 1) {
    throw InvalidInputError("iteration caps must be positive");
  }
}

PropagationField propagate_intra(const NormalizedSimilarity& similarity,
                                 const ConstraintMatrix& constraints,
                                 const IntraParams& params,
                                 IntraPropagationLog* log) {
  params.validate();
  if (constraints.kind() != ConstraintKind::kIntra) {
    throw InvalidInputError("propagate_intra: intra-kind constraints required");
  }
  const Eigen::Index n = similarity.size();
  if (constraints.rows() != n) {
    throw InvalidInputError("propagate_intra: constraint size " +
                            std::to_string(constraints.rows()) +
                            " does not match the graph size " +
                            std::to_string(n));
  }
  const Matrix z = constraints.to_dense();

  Matrix vertical = Matrix::Zero(n, n);
  Matrix horizontal = Matrix::Zero(n, n);
  Matrix prev_vertical = vertical;
  Matrix prev_horizontal = horizontal;
  std::vector<double> outer_residuals;

  for (int round = 1; round <= params.max_outer_iters; ++round) {
    std::vector<double>* trace =
        (log && round == 1) ? &log->first_round_inner_residuals : nullptr;
    const Matrix rhs_v = (1.0 - params.beta) * z + params.beta * horizontal;
    const int iters_v = detail::iterate_diffusion_left(
        similarity.values, params.alpha, rhs_v, vertical, params.inner_tol,
        params.max_inner_iters, trace);

    const Matrix rhs_h = (1.0 - params.beta) * z + params.beta * vertical;
    const int iters_h = detail::iterate_diffusion_right(
        similarity.values, params.alpha, rhs_h, horizontal, params.inner_tol,
        params.max_inner_iters);

    const double residual =
        std::max(detail::relative_change(vertical, prev_vertical),
                 detail::relative_change(horizontal, prev_horizontal));
    outer_residuals.push_back(residual);
    if (log) {
      log->inner_iterations_vertical.push_back(iters_v);
      log->inner_iterations_horizontal.push_back(iters_h);
      log->outer_residuals.push_back(residual);
      log->outer_iterations = round;
    }
    if (residual < params.outer_tol) {
      PropagationField field = (vertical + horizontal) / 2.0;
      if (log) {
        log->vertical = vertical;
        log->horizontal = horizontal;
        log->unnormalized = field;
      }
      const double field_max = field.maxCoeff();
      if (field_max > 0.0) field /= field_max;
      return field.cwiseMax(-1.0).cwiseMin(1.0);
    }
    prev_vertical = vertical;
    prev_horizontal = horizontal;
  }

  throw NoConvergenceError(
      "propagate_intra: outer loop exceeded " +
          std::to_string(params.max_outer_iters) + " rounds (residual " +
          std::to_string(outer_residuals.back()) + ")",
      outer_residuals.back(), outer_residuals);
}

WeightMatrix adjust_weights_cwa(const WeightMatrix& weights,
                                const PropagationField& field) {
  const Eigen::Index n = weights.rows();
  if (weights.cols() != n) {
    throw InvalidInputError("adjust_weights_cwa: weights must be square");
  }
  if (field.rows() != n || field.cols() != n) {
    throw InvalidInputError("adjust_weights_cwa: field size mismatch");
  }
  if (!field.allFinite() || field.minCoeff() < -1.0 || field.maxCoeff() > 1.0) {
    throw InvalidInputError(
        "adjust_weights_cwa: field entries must lie in [-1, 1]");
  }

  double w_max = 0.0;
  for (int outer = 0; outer < weights.outerSize(); ++outer) {
    for (SparseMatrix::InnerIterator it(weights, outer); it; ++it) {
      w_max = std::max(w_max, it.value());
    }
  }
  const double scale = w_max > 1.0 ? 1.0 / w_max : 1.0;

  // Work from the symmetric field so the adjusted matrix stays symmetric.
  SparseMatrix adjusted = weights;
  for (int outer = 0; outer < adjusted.outerSize(); ++outer) {
    for (SparseMatrix::InnerIterator it(adjusted, outer); it; ++it) {
      if (it.row() == it.col()) {
        it.valueRef() = 0.0;
        continue;
      }
      const double w = it.value() * scale;
      const double f = (field(it.row(), it.col()) + field(it.col(), it.row())) / 2.0;
      it.valueRef() = f >= 0.0 ? 1.0 - (1.0 - f) * (1.0 - w) : (1.0 + f) * w;
    }
  }
  adjusted.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  adjusted.makeCompressed();
  return adjusted;
}

}  // namespace crossprop
