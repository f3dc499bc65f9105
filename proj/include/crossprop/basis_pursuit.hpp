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

#ifndef CROSSPROP_BASIS_PURSUIT_HPP_
#define CROSSPROP_BASIS_PURSUIT_HPP_

#include "crossprop/types.hpp"

namespace crossprop {

/// An underdetermined linear system A x = b with A of size m x n, m <= n.
struct LinearSystem {
  Matrix a;
  Vector b;

  /// Throws InvalidInputError on shape or finiteness violations.
  void validate() const;
};

/// Solves min ||x||_1 subject to A x = b.
///
/// The variable is split as x = x+ - x- with x+, x- >= 0 and sum(x+ + x-) is
/// minimized by a dense two-phase simplex with Bland's anti-cycling rule, so
/// the result is always a vertex (basic) solution; when the optimum is not
/// unique an arbitrary optimal vertex is returned. Feasibility tolerance is
/// 1e-9; the pivot budget is 10 (m + n)^2.
///
/// Throws InfeasibleError when phase 1 cannot reach a feasible point and
/// NoConvergenceError when the pivot budget runs out.
Vector solve_basis_pursuit(const LinearSystem& sys);

}  // namespace crossprop

#endif  // CROSSPROP_BASIS_PURSUIT_HPP_
