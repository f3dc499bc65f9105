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

#ifndef CROSSPROP_SRC_PROPAGATION_COMMON_HPP_
#define CROSSPROP_SRC_PROPAGATION_COMMON_HPP_

#include <utility>
#include <vector>

#include "crossprop/errors.hpp"
#include "crossprop/types.hpp"

namespace crossprop::detail {

// Frobenius change of an update, relative to the new iterate (absolute when
// the new iterate is zero).
inline double relative_change(const Matrix& next, const Matrix& prev) {
  const double delta = (next - prev).norm();
  const double denom = next.norm();
  return denom > 0.0 ? delta / denom : delta;
}

// Iterates F <- alpha * S * F + (1 - alpha) * R starting from the passed F
// (warm start) until the relative change drops below tol. Returns the number
// of iterations run; appends per-iteration changes to `trace` when given.
inline int iterate_diffusion_left(const SparseMatrix& s, double alpha,
                                  const Matrix& r, Matrix& f, double tol,
                                  int max_iters,
                                  std::vector<double>* trace = nullptr) {
  const Matrix base = (1.0 - alpha) * r;
  double change = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    Matrix next = alpha * (s * f) + base;
    change = relative_change(next, f);
    f = std::move(next);
    if (trace) trace->push_back(change);
    if (change < tol) return it;
  }
  throw NoConvergenceError("diffusion did not converge within " +
                               std::to_string(max_iters) + " iterations",
                           change);
}

// Transposed-side variant: F <- alpha * F * S + (1 - alpha) * R.
inline int iterate_diffusion_right(const SparseMatrix& s, double alpha,
                                   const Matrix& r, Matrix& f, double tol,
                                   int max_iters,
                                   std::vector<double>* trace = nullptr) {
  const Matrix base = (1.0 - alpha) * r;
  double change = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    Matrix next = alpha * (f * s) + base;
    change = relative_change(next, f);
    f = std::move(next);
    if (trace) trace->push_back(change);
    if (change < tol) return it;
  }
  throw NoConvergenceError("diffusion did not converge within " +
                               std::to_string(max_iters) + " iterations",
                           change);
}

}  // namespace crossprop::detail

#endif  // CROSSPROP_SRC_PROPAGATION_COMMON_HPP_
