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

#include "crossprop/l1_graph.hpp"

#include <cassert>
#include <cmath>
#include <string>
#include <utility>

#include "crossprop/affinity.hpp"
#include "crossprop/basis_pursuit.hpp"
#include "crossprop/jacobi.hpp"
#include "crossprop/parallel.hpp"

namespace crossprop {
namespace {

// Coefficients this small are simplex roundoff, not edges.
constexpr double kWeightFloor = 1e-12;

}  // namespace

NeighborhoodSystem make_neighborhood_system(
    const AffinityMatrix& aff, const std::vector<std::vector<int>>& neighborhoods,
    int index) {
  const auto& nbrs = neighborhoods[static_cast<std::size_t>(index)];
  const int k = static_cast<int>(nbrs.size());
  NeighborhoodSystem nb;
  nb.index = index;
  nb.neighborhood = nbrs;
  nb.target.resize(k);
  nb.gram.resize(k, k);
  for (int a = 0; a < k; ++a) {
    nb.target(a) = aff(nbrs[static_cast<std::size_t>(a)], index);
    for (int b = 0; b < k; ++b) {
      nb.gram(a, b) =
          aff(nbrs[static_cast<std::size_t>(a)], nbrs[static_cast<std::size_t>(b)]);
    }
  }
  // Precomputed affinities are only symmetric within tolerance.
  nb.gram = ((nb.gram + nb.gram.transpose()) / 2.0).eval();
  return nb;
}

SparseReconstruction sparse_reconstruct(const NeighborhoodSystem& nb) {
  const Eigen::Index k = nb.target.size();
  LinearSystem sys;
  sys.a.resize(k, 2 * k);
  sys.a.leftCols(k) = nb.gram;
  sys.a.rightCols(k) = Matrix::Identity(k, k);
  sys.b = nb.target;
  const Vector solution = solve_basis_pursuit(sys);
  return SparseReconstruction{solution.head(k), solution.tail(k)};
}

ConstraintLaplacian constraint_laplacian(const ConstraintMatrix& intra,
                                         const std::vector<int>& neighborhood) {
  if (intra.kind() != ConstraintKind::kIntra) {
    throw InvalidInputError("constraint_laplacian: intra-kind matrix required");
  }
  const int k = static_cast<int>(neighborhood.size());
  for (int j : neighborhood) {
    if (j < 0 || j >= intra.rows()) {
      throw InvalidInputError("constraint_laplacian: neighborhood index " +
                              std::to_string(j) + " out of range");
    }
  }

  const SignMatrix signs = intra.sign_matrix();
  Matrix similarity(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      similarity(a, b) =
          1.0 + static_cast<double>(
                    signs(neighborhood[static_cast<std::size_t>(a)],
                          neighborhood[static_cast<std::size_t>(b)]));
    }
  }

  const Vector row_sums = similarity.rowwise().sum();
  // The diagonal of the restricted constraint block is zero, so every row of
  // 1 + Z contributes at least the diagonal 1.
  assert(row_sums.minCoeff() > 0.0);
  const Vector inv_sqrt = row_sums.cwiseSqrt().cwiseInverse();
  Matrix lap = -(inv_sqrt * inv_sqrt.transpose()).cwiseProduct(similarity);
  lap.diagonal().array() += 1.0;
  lap = ((lap + lap.transpose()) / 2.0).eval();

  const EigenDecomposition eig = symmetric_eig(lap);
  const Vector clamped = eig.values.cwiseMax(0.0);
  ConstraintLaplacian out;
  out.laplacian = lap;
  out.factor = clamped.cwiseSqrt().asDiagonal() * eig.vectors.transpose();
  return out;
}

ConstrainedSparseReconstruction constrained_sparse_reconstruct(
    const NeighborhoodSystem& nb, const ConstraintLaplacian& cl) {
  const Eigen::Index k = nb.target.size();
  if (cl.factor.rows() != k || cl.factor.cols() != k) {
    throw InvalidInputError(
        "constrained_sparse_reconstruct: dimension mismatch");
  }
  LinearSystem sys;
  sys.a = Matrix::Zero(2 * k, 3 * k);
  sys.a.block(0, 0, k, k) = nb.gram;
  sys.a.block(0, k, k, k) = Matrix::Identity(k, k);
  sys.a.block(k, 0, k, k) = cl.factor;
  sys.a.block(k, 2 * k, k, k) = Matrix::Identity(k, k);
  sys.b = Vector::Zero(2 * k);
  sys.b.head(k) = nb.target;

  const Vector solution = solve_basis_pursuit(sys);
  return ConstrainedSparseReconstruction{solution.segment(0, k),
                                         solution.segment(k, k),
                                         solution.segment(2 * k, k)};
}

WeightMatrix build_l1_graph(const AffinityMatrix& aff, int k,
                            const ConstraintMatrix* intra) {
  const Eigen::Index n = aff.rows();
  if (intra && (intra->rows() != n || intra->kind() != ConstraintKind::kIntra)) {
    throw InvalidInputError("build_l1_graph: intra constraints do not match");
  }
  const auto neighborhoods = knn_neighborhoods(aff, k);

  std::vector<Vector> rows(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const auto nb =
        make_neighborhood_system(aff, neighborhoods, static_cast<int>(i));
    try {
      if (intra) {
        const auto cl = constraint_laplacian(*intra, nb.neighborhood);
        rows[i] = constrained_sparse_reconstruct(nb, cl).coefficients;
      } else {
        rows[i] = sparse_reconstruct(nb).coefficients;
      }
    } catch (const InfeasibleError& e) {
      throw InfeasibleError("point " + std::to_string(i) + ": " + e.what());
    } catch (const NoConvergenceError& e) {
      throw NoConvergenceError("point " + std::to_string(i) + ": " + e.what(),
                               e.last_residual(), e.residual_history());
    }
  });

  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nbrs = neighborhoods[static_cast<std::size_t>(i)];
    const Vector& coef = rows[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      const double w = std::abs(coef(static_cast<Eigen::Index>(j)));
      if (w > kWeightFloor) {
        triplets.emplace_back(i, nbrs[j], w);
      }
    }
  }
  SparseMatrix raw(n, n);
  raw.setFromTriplets(triplets.begin(), triplets.end());
  return symmetrize(raw);
}

}  // namespace crossprop
