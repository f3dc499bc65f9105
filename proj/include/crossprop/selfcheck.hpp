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

#ifndef CROSSPROP_SELFCHECK_HPP_
#define CROSSPROP_SELFCHECK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "crossprop/types.hpp"

namespace crossprop {

/// One synthetic instance for the solver checks: two k-NN graphs over random
/// point clouds plus a sparse random sign matrix.
struct SyntheticInstance {
  NormalizedSimilarity similarity_a;
  NormalizedSimilarity similarity_b;
  Matrix constraints_dense;
  ConstraintMatrix constraints;

  SyntheticInstance(NormalizedSimilarity sa, NormalizedSimilarity sb,
                    ConstraintMatrix z);
};

SyntheticInstance make_synthetic_instance(Eigen::Index items_a,
                                          Eigen::Index items_b, int k,
                                          std::uint64_t seed,
                                          double constraint_density = 0.1);

struct OracleCheckCase {
  double alpha = 0.1;
  double beta = 0.5;
  double relative_error = 0.0;
  bool passed = false;
};

struct OracleCheckReport {
  std::vector<OracleCheckCase> cases;
  double worst_relative_error = 0.0;
  bool passed = false;
};

/// Runs the iterative inter-view solver against its dense closed-form
/// counterpart on `instances` random instances (30 x 20 items, k = 5),
/// cycling alpha through {0.025, 0.1} and beta through {0, 0.5, 0.95}, and
/// requires relative Frobenius agreement within `tolerance`.
OracleCheckReport run_oracle_equivalence(int instances = 20,
                                         double tolerance = 1e-5,
                                         std::uint64_t seed = 42);

}  // namespace crossprop

#endif  // CROSSPROP_SELFCHECK_HPP_
