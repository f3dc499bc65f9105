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

#include "crossprop/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace crossprop {
namespace {

constexpr int kMaxSweeps = 50;

double max_off_diagonal(const Matrix& a) {
  const Eigen::Index k = a.rows();
  double worst = 0.0;
  for (Eigen::Index p = 0; p < k; ++p) {
    for (Eigen::Index q = p + 1; q < k; ++q) {
      worst = std::max(worst, std::abs(a(p, q)));
    }
  }
  return worst;
}

// One plane rotation annihilating a(p, q): A <- J^T A J, V <- V J.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Vector col_p = a.col(p);
  const Vector col_q = a.col(q);
  a.col(p) = c * col_p - s * col_q;
  a.col(q) = s * col_p + c * col_q;
  const Vector row_p = a.row(p);
  const Vector row_q = a.row(q);
  a.row(p) = (c * row_p - s * row_q).transpose();
  a.row(q) = (s * row_p + c * row_q).transpose();
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  const Vector v_p = v.col(p);
  const Vector v_q = v.col(q);
  v.col(p) = c * v_p - s * v_q;
  v.col(q) = s * v_p + c * v_q;
}

}  // namespace

EigenDecomposition symmetric_eig(const Matrix& m) {
  const Eigen::Index k = m.rows();
  if (k < 1 || m.cols() != k) {
    throw InvalidInputError("symmetric_eig: matrix must be square, k >= 1");
  }
  if (!m.allFinite()) {
    throw InvalidInputError("symmetric_eig: non-finite entries");
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8) {
    throw InvalidInputError("symmetric_eig: input not symmetric within 1e-8");
  }

  Matrix a = (m + m.transpose()) / 2.0;
  Matrix v = Matrix::Identity(k, k);
  const double threshold = 1e-12 * a.norm();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (max_off_diagonal(a) <= threshold) break;
    for (Eigen::Index p = 0; p < k; ++p) {
      for (Eigen::Index q = p + 1; q < k; ++q) {
        if (std::abs(a(p, q)) > threshold) rotate(a, v, p, q);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  EigenDecomposition out;
  out.values.resize(k);
  out.vectors.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)],
                      order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace crossprop
