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

#include "crossprop/inter_propagation.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <string>
#include <utility>

#include "propagation_common.hpp"

namespace crossprop {
namespace {

constexpr Eigen::Index kClosedFormSizeGuard = 2000;

void check_inputs(const NormalizedSimilarity& sa, const NormalizedSimilarity& sb,
                  const ConstraintMatrix& z) {
  if (z.kind() != ConstraintKind::kInter) {
    throw InvalidInputError("propagate_inter: inter-kind constraints required");
  }
  if (sa.values.rows() != sa.values.cols() ||
      sb.values.rows() != sb.values.cols()) {
    throw InvalidInputError("propagate_inter: similarity matrices must be square");
  }
  if (z.rows() != sa.size() || z.cols() != sb.size()) {
    throw InvalidInputError(
        "propagate_inter: constraint matrix is " + std::to_string(z.rows()) +
        "x" + std::to_string(z.cols()) + " but graphs have " +
        std::to_string(sa.size()) + " and " + std::to_string(sb.size()) +
        " items");
  }
}

}  // namespace

PropagationField propagate_inter(const NormalizedSimilarity& similarity_a,
                                 const NormalizedSimilarity& similarity_b,
                                 const ConstraintMatrix& constraints,
                                 const PropagationParams& params,
                                 InterPropagationLog* log) {
  params.validate();
  check_inputs(similarity_a, similarity_b, constraints);
  const Eigen::Index n = similarity_a.size();
  const Eigen::Index m = similarity_b.size();
  const Matrix z = constraints.to_dense();

  Matrix field_a = Matrix::Zero(n, m);
  Matrix field_b = Matrix::Zero(n, m);
  Matrix prev_a = field_a;
  Matrix prev_b = field_b;
  std::vector<double> outer_residuals;

  for (int round = 1; round <= params.max_outer_iters; ++round) {
    std::vector<double>* trace =
        (log && round == 1) ? &log->first_round_inner_residuals : nullptr;
    const Matrix rhs_a = (1.0 - params.beta) * z + params.beta * field_b;
    const int iters_a = detail::iterate_diffusion_left(
        similarity_a.values, params.alpha_a, rhs_a, field_a, params.inner_tol,
        params.max_inner_iters, trace);

    const Matrix rhs_b = (1.0 - params.beta) * z + params.beta * field_a;
    const int iters_b = detail::iterate_diffusion_right(
        similarity_b.values, params.alpha_b, rhs_b, field_b, params.inner_tol,
        params.max_inner_iters);

    const double residual =
        std::max(detail::relative_change(field_a, prev_a),
                 detail::relative_change(field_b, prev_b));
    outer_residuals.push_back(residual);
    if (log) {
      log->inner_iterations_a.push_back(iters_a);
      log->inner_iterations_b.push_back(iters_b);
      log->outer_residuals.push_back(residual);
      log->outer_iterations = round;
    }
    if (residual < params.outer_tol) {
      if (log) {
        log->field_a = field_a;
        log->field_b = field_b;
      }
      return (field_a + field_b) / 2.0;
    }
    prev_a = field_a;
    prev_b = field_b;
  }

  throw NoConvergenceError(
      "propagate_inter: outer loop exceeded " +
          std::to_string(params.max_outer_iters) + " rounds (residual " +
          std::to_string(outer_residuals.back()) + ")",
      outer_residuals.back(), outer_residuals);
}

PropagationField closed_form_inter(const NormalizedSimilarity& similarity_a,
                                   const NormalizedSimilarity& similarity_b,
                                   const ConstraintMatrix& constraints,
                                   const PropagationParams& params,
                                   InterPropagationLog* log) {
  params.validate();
  check_inputs(similarity_a, similarity_b, constraints);
  const Eigen::Index n = similarity_a.size();
  const Eigen::Index m = similarity_b.size();
  if (n > kClosedFormSizeGuard || m > kClosedFormSizeGuard) {
    throw InvalidInputError(
        "closed_form_inter: refusing dense solve beyond 2000 items per view");
  }
  const Matrix z = constraints.to_dense();
  const double mu_a = params.alpha_a / (1.0 - params.alpha_a);
  const double mu_b = params.alpha_b / (1.0 - params.alpha_b);

  // I + mu L = (1 + mu) I - mu S; symmetric positive definite.
  Matrix system_a = Matrix(-mu_a * similarity_a.values);
  system_a.diagonal().array() += 1.0 + mu_a;
  Matrix system_b = Matrix(-mu_b * similarity_b.values);
  system_b.diagonal().array() += 1.0 + mu_b;
  const Eigen::LDLT<Matrix> solver_a(system_a);
  const Eigen::LDLT<Matrix> solver_b(system_b);

  Matrix field_a = Matrix::Zero(n, m);
  Matrix field_b = Matrix::Zero(n, m);
  Matrix prev_a = field_a;
  Matrix prev_b = field_b;
  std::vector<double> outer_residuals;

  for (int round = 1; round <= params.max_outer_iters; ++round) {
    field_a = solver_a.solve((1.0 - params.beta) * z + params.beta * field_b);
    // The column-view system applies from the right; transpose and use the
    // symmetry of the system matrix.
    field_b = solver_b
                  .solve(((1.0 - params.beta) * z + params.beta * field_a)
                             .transpose())
                  .transpose();

    const double residual =
        std::max(detail::relative_change(field_a, prev_a),
                 detail::relative_change(field_b, prev_b));
    outer_residuals.push_back(residual);
    if (log) {
      log->outer_residuals.push_back(residual);
      log->outer_iterations = round;
    }
    if (residual < params.outer_tol) {
      if (log) {
        log->field_a = field_a;
        log->field_b = field_b;
      }
      return (field_a + field_b) / 2.0;
    }
    prev_a = field_a;
    prev_b = field_b;
  }

  throw NoConvergenceError(
      "closed_form_inter: outer loop exceeded " +
          std::to_string(params.max_outer_iters) + " rounds (residual " +
          std::to_string(outer_residuals.back()) + ")",
      outer_residuals.back(), outer_residuals);
}

}  // namespace crossprop
