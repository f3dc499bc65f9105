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

#include "crossprop/basis_pursuit.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace crossprop {
namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kRatioTieTol = 1e-12;

// Dense full-tableau simplex over [A, -A | I | b] with Bland's rule.
class SplitSimplex {
 public:
  SplitSimplex(const Matrix& a, const Vector& b)
      : m_(a.rows()),
        n_(a.cols()),
        split_(2 * n_),
        total_(split_ + m_),
        max_pivots_(10L * static_cast<long>(m_ + n_) *
                    static_cast<long>(m_ + n_)),
        tableau_(Matrix::Zero(m_, total_ + 1)),
        basis_(static_cast<std::size_t>(m_)) {
    tableau_.block(0, 0, m_, n_) = a;
    tableau_.block(0, n_, m_, n_) = -a;
    tableau_.col(total_) = b;
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (tableau_(r, total_) < 0.0) tableau_.row(r) = -tableau_.row(r);
    }
    tableau_.block(0, split_, m_, m_) = Matrix::Identity(m_, m_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      basis_[static_cast<std::size_t>(r)] = split_ + r;
    }
  }

  /// Runs both phases and returns the split solution z (length 2n).
  Vector solve(double feasibility_tol) {
    Vector phase1_cost = Vector::Zero(total_);
    phase1_cost.tail(m_).setOnes();
    run_phase(phase1_cost, total_);

    double infeasibility = 0.0;
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] >= split_) {
        infeasibility += std::max(tableau_(r, total_), 0.0);
      }
    }
    if (infeasibility > feasibility_tol) {
      throw InfeasibleError("basis pursuit: system infeasible (phase-1 level " +
                            std::to_string(infeasibility) + ")");
    }
    drive_out_artificials();

    Vector phase2_cost = Vector::Zero(total_);
    phase2_cost.head(split_).setOnes();
    run_phase(phase2_cost, split_);

    Vector z = Vector::Zero(split_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      const Eigen::Index var = basis_[static_cast<std::size_t>(r)];
      if (var < split_) z(var) = std::max(tableau_(r, total_), 0.0);
    }
    return z;
  }

 private:
  void pivot(Eigen::Index row, Eigen::Index col) {
    tableau_.row(row) /= tableau_(row, col);
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (r == row) continue;
      const double f = tableau_(r, col);
      if (f != 0.0) tableau_.row(r) -= f * tableau_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
    ++pivots_;
  }

  void check_budget() const {
    if (pivots_ >= max_pivots_) {
      throw NoConvergenceError("basis pursuit: pivot budget exhausted",
                               static_cast<double>(pivots_));
    }
  }

  // Pivots until no reduced cost is below -tol, considering only entering
  // columns j < entering_limit. Bland's rule on both choices.
  void run_phase(const Vector& cost, Eigen::Index entering_limit) {
    std::vector<char> is_basic(static_cast<std::size_t>(total_), 0);
    for (Eigen::Index v : basis_) is_basic[static_cast<std::size_t>(v)] = 1;
    Vector basis_cost(m_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      basis_cost(r) = cost(basis_[static_cast<std::size_t>(r)]);
    }

    for (;;) {
      check_budget();
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < entering_limit; ++j) {
        if (is_basic[static_cast<std::size_t>(j)]) continue;
        const double reduced = cost(j) - basis_cost.dot(tableau_.col(j));
        if (reduced < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;

      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < m_; ++r) {
        const double coef = tableau_(r, enter);
        if (coef <= kPivotTol) continue;
        const double ratio = std::max(tableau_(r, total_), 0.0) / coef;
        if (ratio < best_ratio - kRatioTieTol) {
          best_ratio = ratio;
          leave = r;
        } else if (ratio <= best_ratio + kRatioTieTol && leave >= 0 &&
                   basis_[static_cast<std::size_t>(r)] <
                       basis_[static_cast<std::size_t>(leave)]) {
          leave = r;
        }
      }
      if (leave < 0) {
        throw NoConvergenceError(
            "basis pursuit: unbounded pivot column (numerical breakdown)",
            std::numeric_limits<double>::infinity());
      }

      is_basic[static_cast<std::size_t>(
          basis_[static_cast<std::size_t>(leave)])] = 0;
      is_basic[static_cast<std::size_t>(enter)] = 1;
      pivot(leave, enter);
      basis_cost(leave) = cost(enter);
    }
  }

  // Replaces basic artificials by real columns where possible. Rows that stay
  // artificial are redundant (all-zero over real columns) and remain inert.
  void drive_out_artificials() {
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < split_) continue;
      for (Eigen::Index j = 0; j < split_; ++j) {
        if (std::abs(tableau_(r, j)) > kPivotTol) {
          check_budget();
          pivot(r, j);
          break;
        }
      }
    }
  }

  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::Index split_;
  Eigen::Index total_;
  long max_pivots_;
  long pivots_ = 0;
  Matrix tableau_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

void LinearSystem::validate() const {
  if (a.rows() < 1 || a.cols() < 1) {
    throw InvalidInputError("linear system: empty matrix");
  }
  if (a.rows() > a.cols()) {
    throw InvalidInputError("linear system: expected m <= n");
  }
  if (b.size() != a.rows()) {
    throw InvalidInputError("linear system: right-hand side size mismatch");
  }
  if (!a.allFinite() || !b.allFinite()) {
    throw InvalidInputError("linear system: non-finite entries");
  }
}

Vector solve_basis_pursuit(const LinearSystem& sys) {
  sys.validate();
  const Eigen::Index n = sys.a.cols();
  const double b_inf = sys.b.lpNorm<Eigen::Infinity>();

  SplitSimplex simplex(sys.a, sys.b);
  const Vector z = simplex.solve(1e-9 * (1.0 + sys.b.lpNorm<1>()));
  Vector x = z.head(n) - z.tail(n);

  const double residual = (sys.a * x - sys.b).lpNorm<Eigen::Infinity>();
  if (residual > 1e-8 * (1.0 + b_inf)) {
    throw NoConvergenceError("basis pursuit: residual " +
                                 std::to_string(residual) +
                                 " exceeds tolerance after termination",
                             residual);
  }
  return x;
}

}  // namespace crossprop
