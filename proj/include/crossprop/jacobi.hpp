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

#ifndef CROSSPROP_JACOBI_HPP_
#define CROSSPROP_JACOBI_HPP_

#include "crossprop/types.hpp"

namespace crossprop {

/// Eigendecomposition of a symmetric matrix: orthonormal eigenvector columns
/// and eigenvalues sorted ascending.
struct EigenDecomposition {
  Matrix vectors;
  Vector values;
};

/// Cyclic Jacobi rotations, sweeping until the largest off-diagonal entry
/// falls below 1e-12 * ||M||_fro or 50 sweeps have run. The input must be
/// symmetric within 1e-8 (max norm) or InvalidInputError is thrown.
EigenDecomposition symmetric_eig(const Matrix& m);

}  // namespace crossprop

#endif  // CROSSPROP_JACOBI_HPP_
