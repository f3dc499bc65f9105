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

#ifndef CROSSPROP_TYPES_HPP_
#define CROSSPROP_TYPES_HPP_

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossprop/errors.hpp"

namespace crossprop {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using SignMatrix = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense symmetric nonnegative kernel (affinity) matrix over one view.
using AffinityMatrix = Matrix;

/// Sparse symmetric nonnegative edge weights with a zero diagonal.
using WeightMatrix = SparseMatrix;

/// Dense field of propagated constraint confidences. Rows index view-A items,
/// columns index view-B items; positive entries read as must-link confidence,
/// negative as cannot-link confidence.
using PropagationField = Matrix;

/// Symmetrically normalized similarity S = D^{-1/2} W D^{-1/2} together with
/// the node degrees d_i = sum_j w_ij. Rows and columns of isolated nodes
/// (d_i = 0) are all zero. The graph Laplacian used elsewhere is L = I - S.
struct NormalizedSimilarity {
  SparseMatrix values;
  Vector degree;

  Eigen::Index size() const { return values.rows(); }
};

enum class ConstraintKind { kInter, kIntra };

/// One signed pairwise constraint: +1 must-link, -1 cannot-link.
struct ConstraintEntry {
  int i = 0;
  int j = 0;
  int sign = 0;
};

/// Sparse signed matrix of pairwise constraints. Inter constraints pair a
/// view-A item (row) with a view-B item (column); intra constraints pair two
/// items of one view and are stored symmetrically with no diagonal entries.
class ConstraintMatrix {
 public:
  ConstraintMatrix(ConstraintKind kind, Eigen::Index rows, Eigen::Index cols,
                   std::vector<ConstraintEntry> entries);

  ConstraintKind kind() const { return kind_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const std::vector<ConstraintEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Dense double matrix with entries in {-1, 0, +1}.
  Matrix to_dense() const;

  /// Dense int8 matrix of signs; cheaper than to_dense for lookups.
  SignMatrix sign_matrix() const;

  /// Copy keeping only entries whose endpoints are both flagged. keep_rows
  /// and keep_cols must match rows() and cols(); for intra matrices pass the
  /// same flags twice.
  ConstraintMatrix restricted(const std::vector<char>& keep_rows,
                              const std::vector<char>& keep_cols) const;

 private:
  ConstraintKind kind_;
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<ConstraintEntry> entries_;
};

/// One view of a two-view dataset: a feature matrix (items x dims) and/or a
/// precomputed affinity matrix, plus optional per-item class labels.
struct ViewDataset {
  Eigen::Index items = 0;
  std::optional<Matrix> features;
  std::optional<Matrix> affinity;
  std::optional<std::vector<int>> labels;

  static ViewDataset from_features(Matrix f,
                                   std::optional<std::vector<int>> labels = {});
  static ViewDataset from_affinity(Matrix a,
                                   std::optional<std::vector<int>> labels = {});
};

/// Returns the list of violated invariants; empty means valid. Never throws.
std::vector<std::string> validate_dataset(const ViewDataset& ds);

/// Parameters of inter-view propagation. alpha_a drives diffusion over the
/// row view's graph and alpha_b over the column view's; beta couples the two
/// per-view solutions. In the underlying objective these correspond to
/// mu_hat = alpha / (1 - alpha) and gamma = beta / (1 - beta).
struct PropagationParams {
  double alpha_a = 0.05;
  double alpha_b = 0.05;
  double beta = 0.5;
  double inner_tol = 1e-6;
  double outer_tol = 1e-4;
  int max_inner_iters = 1000;
  int max_outer_iters = 300;

  /// Throws InvalidInputError when a field is out of range.
  void validate() const;
};

enum class KernelType { kGaussian, kCosine, kPrecomputed };

/// Affinity kernel. sigma empty means the self-tuning rule: the mean distance
/// to each point's k-th nearest neighbor.
struct KernelSpec {
  KernelType type = KernelType::kGaussian;
  std::optional<double> sigma;

  void validate() const;
};

enum class GraphConstruction {
  kKnn,  // plain k-NN graph carrying kernel affinities on selected edges
  kSr,   // L1-graph from sparse reconstruction
  kCwa,  // k-NN graph reweighted by propagated intra-view constraints
  kCsr,  // L1-graph from constraint-regularized sparse reconstruction
};

struct GraphSpec {
  int k = 10;
  KernelSpec kernel;
  GraphConstruction construction = GraphConstruction::kKnn;

  /// Throws InvalidInputError when k is not in [1, items).
  void validate(Eigen::Index items) const;
};

const char* to_string(GraphConstruction c);
GraphConstruction graph_construction_from_string(const std::string& s);

}  // namespace crossprop

#endif  // CROSSPROP_TYPES_HPP_
