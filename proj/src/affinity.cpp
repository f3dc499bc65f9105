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

#include "crossprop/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crossprop/parallel.hpp"

namespace crossprop {
namespace {

Matrix squared_distances(const Matrix& x) {
  const Vector sq = x.rowwise().squaredNorm();
  Matrix d2 = (-2.0 * x * x.transpose()).rowwise() + sq.transpose();
  d2.colwise() += sq;
  // Gram roundoff can push tiny distances below zero.
  return d2.cwiseMax(0.0);
}

double auto_sigma(const Matrix& d2, int k) {
  const Eigen::Index n = d2.rows();
  const int kth = std::clamp<int>(k, 1, static_cast<int>(n) - 1);
  double total = 0.0;
  std::vector<double> row(static_cast<std::size_t>(n) - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t w = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) row[w++] = d2(i, j);
    }
    std::nth_element(row.begin(), row.begin() + (kth - 1), row.end());
    total += std::sqrt(row[static_cast<std::size_t>(kth) - 1]);
  }
  const double sigma = total / static_cast<double>(n);
  return sigma > 0.0 ? sigma : 1.0;
}

}  // namespace

AffinityMatrix compute_affinity(const Matrix& features, const KernelSpec& kernel,
                                int k_for_auto_sigma) {
  if (features.rows() == 0 || features.cols() == 0) {
    throw InvalidInputError("compute_affinity: empty feature matrix");
  }
  kernel.validate();
  const Eigen::Index n = features.rows();

  switch (kernel.type) {
    case KernelType::kGaussian: {
      if (n == 1) return Matrix::Ones(1, 1);
      const Matrix d2 = squared_distances(features);
      const double sigma = kernel.sigma ? *kernel.sigma
                                        : auto_sigma(d2, k_for_auto_sigma);
      AffinityMatrix a = (-d2 / (2.0 * sigma * sigma)).array().exp();
      a = ((a + a.transpose()) / 2.0).eval();  // exact symmetry
      a.diagonal().setOnes();
      return a;
    }
    case KernelType::kCosine: {
      const Vector norms = features.rowwise().norm();
      for (Eigen::Index i = 0; i < n; ++i) {
        if (norms(i) <= 0.0) {
          throw InvalidInputError("compute_affinity: zero-norm row " +
                                  std::to_string(i) + " under cosine kernel");
        }
      }
      const Matrix unit = features.array().colwise() / norms.array();
      AffinityMatrix a = (unit * unit.transpose()).cwiseMax(0.0);
      a = ((a + a.transpose()) / 2.0).eval();
      a.diagonal().setOnes();
      return a;
    }
    case KernelType::kPrecomputed:
      throw InvalidInputError(
          "compute_affinity: precomputed kernel takes no feature input");
  }
  throw InvalidInputError("compute_affinity: unknown kernel");
}

std::vector<std::vector<int>> knn_neighborhoods(const AffinityMatrix& aff,
                                                int k) {
  const Eigen::Index n = aff.rows();
  if (aff.cols() != n) throw InvalidInputError("affinity must be square");
  if (k < 1) throw InvalidInputError("k must be at least 1");
  if (k >= n) {
    throw InvalidInputError("k must be smaller than the item count");
  }

  std::vector<std::vector<int>> result(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const Eigen::Index i = static_cast<Eigen::Index>(row);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    // Largest affinity first; ties go to the smaller index.
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int a, int b) {
                        if (aff(i, a) != aff(i, b)) return aff(i, a) > aff(i, b);
                        return a < b;
                      });
    order.resize(static_cast<std::size_t>(k));
    std::sort(order.begin(), order.end());
    result[row] = std::move(order);
  });
  return result;
}

WeightMatrix build_knn_weights(
    const AffinityMatrix& aff,
    const std::vector<std::vector<int>>& neighborhoods) {
  const Eigen::Index n = aff.rows();
  if (static_cast<Eigen::Index>(neighborhoods.size()) != n) {
    throw InvalidInputError("neighborhood list size does not match affinity");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j : neighborhoods[static_cast<std::size_t>(i)]) {
      if (j < 0 || j >= n) {
        throw InvalidInputError("neighborhood index out of range");
      }
      if (j == i) continue;
      // Input affinities are only symmetric within tolerance; store the max
      // of the two orientations so the weight matrix is symmetric exactly.
      const double v = std::max(aff(i, j), aff(j, i));
      triplets.emplace_back(i, j, v);
      triplets.emplace_back(j, i, v);
    }
  }
  WeightMatrix w(n, n);
  // Duplicate insertions collapse via max, which also symmetrizes.
  w.setFromTriplets(triplets.begin(), triplets.end(),
                    [](double a, double b) { return std::max(a, b); });
  w.prune([](Eigen::Index r, Eigen::Index c, double) { return r != c; });
  w.makeCompressed();
  return w;
}

WeightMatrix symmetrize(const SparseMatrix& raw) {
  if (raw.rows() != raw.cols()) {
    throw InvalidInputError("symmetrize: matrix must be square");
  }
  for (int outer = 0; outer < raw.outerSize(); ++outer) {
    for (SparseMatrix::InnerIterator it(raw, outer); it; ++it) {
      if (it.value() < 0.0) {
        throw InvalidInputError("symmetrize: negative entry at (" +
                                std::to_string(it.row()) + ", " +
                                std::to_string(it.col()) + ")");
      }
    }
  }
  SparseMatrix t = raw.transpose();
  WeightMatrix w = (raw + t) * 0.5;
  w.prune([](Eigen::Index r, Eigen::Index c, double v) {
    return r != c && v != 0.0;
  });
  w.makeCompressed();
  return w;
}

NormalizedSimilarity symmetric_normalize(const WeightMatrix& weights) {
  const Eigen::Index n = weights.rows();
  Vector degree = Vector::Zero(n);
  for (int outer = 0; outer < weights.outerSize(); ++outer) {
    for (SparseMatrix::InnerIterator it(weights, outer); it; ++it) {
      degree(it.row()) += it.value();
    }
  }
  Vector inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    inv_sqrt(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;
  }
  SparseMatrix s = weights;
  for (int outer = 0; outer < s.outerSize(); ++outer) {
    for (SparseMatrix::InnerIterator it(s, outer); it; ++it) {
      it.valueRef() *= inv_sqrt(it.row()) * inv_sqrt(it.col());
    }
  }
  s.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  s.makeCompressed();
  return NormalizedSimilarity{std::move(s), std::move(degree)};
}

}  // namespace crossprop
