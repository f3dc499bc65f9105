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

#include "crossprop/selfcheck.hpp"

#include <algorithm>
#include <utility>

#include "crossprop/affinity.hpp"
#include "crossprop/inter_propagation.hpp"
#include "crossprop/rng.hpp"

namespace crossprop {

SyntheticInstance::SyntheticInstance(NormalizedSimilarity sa,
                                     NormalizedSimilarity sb, ConstraintMatrix z)
    : similarity_a(std::move(sa)),
      similarity_b(std::move(sb)),
      constraints_dense(z.to_dense()),
      constraints(std::move(z)) {}

SyntheticInstance make_synthetic_instance(Eigen::Index items_a,
                                          Eigen::Index items_b, int k,
                                          std::uint64_t seed,
                                          double constraint_density) {
  Rng rng(seed);
  const int dims = 6;

  auto random_similarity = [&](Eigen::Index n) {
    Matrix features(n, dims);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int d = 0; d < dims; ++d) features(i, d) = rng.normal();
    }
    const AffinityMatrix aff =
        compute_affinity(features, KernelSpec{KernelType::kGaussian, {}}, k);
    return symmetric_normalize(build_knn_weights(aff, knn_neighborhoods(aff, k)));
  };

  NormalizedSimilarity sa = random_similarity(items_a);
  NormalizedSimilarity sb = random_similarity(items_b);

  std::vector<ConstraintEntry> entries;
  for (int i = 0; i < items_a; ++i) {
    for (int j = 0; j < items_b; ++j) {
      if (rng.uniform() < constraint_density) {
        entries.push_back({i, j, rng.uniform() < 0.5 ? 1 : -1});
      }
    }
  }
  if (entries.empty()) {
    entries.push_back({0, 0, 1});
  }
  ConstraintMatrix z(ConstraintKind::kInter, items_a, items_b,
                     std::move(entries));
  return SyntheticInstance(std::move(sa), std::move(sb), std::move(z));
}

OracleCheckReport run_oracle_equivalence(int instances, double tolerance,
                                         std::uint64_t seed) {
  const double alphas[] = {0.025, 0.1};
  const double betas[] = {0.0, 0.5, 0.95};

  OracleCheckReport report;
  report.passed = true;
  for (int t = 0; t < instances; ++t) {
    const SyntheticInstance instance =
        make_synthetic_instance(30, 20, 5, seed + static_cast<std::uint64_t>(t));
    OracleCheckCase check;
    check.alpha = alphas[t % 2];
    check.beta = betas[t % 3];

    PropagationParams params;
    params.alpha_a = check.alpha;
    params.alpha_b = check.alpha;
    params.beta = check.beta;
    // Both solvers run to tight tolerances so each lands near the unique
    // joint fixed point; the contraction factor per outer round is beta^2.
    params.inner_tol = 1e-10;
    params.outer_tol = 1e-9;
    params.max_inner_iters = 5000;
    params.max_outer_iters = 5000;

    const PropagationField iterative =
        propagate_inter(instance.similarity_a, instance.similarity_b,
                        instance.constraints, params);
    const PropagationField reference =
        closed_form_inter(instance.similarity_a, instance.similarity_b,
                          instance.constraints, params);

    const double denom = std::max(reference.norm(), 1e-300);
    check.relative_error = (iterative - reference).norm() / denom;
    check.passed = check.relative_error <= tolerance;
    report.worst_relative_error =
        std::max(report.worst_relative_error, check.relative_error);
    report.passed = report.passed && check.passed;
    report.cases.push_back(check);
  }
  return report;
}

}  // namespace crossprop
