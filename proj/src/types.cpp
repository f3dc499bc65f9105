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

#include "crossprop/types.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace crossprop {
namespace {

std::uint64_t pair_key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

}  // namespace

ConstraintMatrix::ConstraintMatrix(ConstraintKind kind, Eigen::Index rows,
                                   Eigen::Index cols,
                                   std::vector<ConstraintEntry> entries)
    : kind_(kind), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ < 0 || cols_ < 0) {
    throw InvalidInputError("constraint matrix: negative dimensions");
  }
  if (kind_ == ConstraintKind::kIntra && rows_ != cols_) {
    throw InvalidInputError("intra constraint matrix must be square");
  }
  std::unordered_map<std::uint64_t, int> seen;
  seen.reserve(entries_.size());
  for (const ConstraintEntry& e : entries_) {
    if (e.sign != 1 && e.sign != -1) {
      throw InvalidInputError("constraint sign must be +1 or -1");
    }
    if (e.i < 0 || e.i >= rows_ || e.j < 0 || e.j >= cols_) {
      throw InvalidInputError("constraint index out of range: (" +
                              std::to_string(e.i) + ", " + std::to_string(e.j) +
                              ")");
    }
    if (kind_ == ConstraintKind::kIntra && e.i == e.j) {
      throw InvalidInputError("intra constraint on the diagonal: " +
                              std::to_string(e.i));
    }
    if (!seen.emplace(pair_key(e.i, e.j), e.sign).second) {
      throw InvalidInputError("duplicate constraint entry: (" +
                              std::to_string(e.i) + ", " + std::to_string(e.j) +
                              ")");
    }
  }
  if (kind_ == ConstraintKind::kIntra) {
    for (const ConstraintEntry& e : entries_) {
      auto it = seen.find(pair_key(e.j, e.i));
      if (it == seen.end() || it->second != e.sign) {
        throw InvalidInputError(
            "intra constraint set is not symmetric at (" + std::to_string(e.i) +
            ", " + std::to_string(e.j) + ")");
      }
    }
  }
}

Matrix ConstraintMatrix::to_dense() const {
  Matrix z = Matrix::Zero(rows_, cols_);
  for (const ConstraintEntry& e : entries_) {
    z(e.i, e.j) = static_cast<double>(e.sign);
  }
  return z;
}

SignMatrix ConstraintMatrix::sign_matrix() const {
  SignMatrix z = SignMatrix::Zero(rows_, cols_);
  for (const ConstraintEntry& e : entries_) {
    z(e.i, e.j) = static_cast<std::int8_t>(e.sign);
  }
  return z;
}

ConstraintMatrix ConstraintMatrix::restricted(
    const std::vector<char>& keep_rows,
    const std::vector<char>& keep_cols) const {
  if (static_cast<Eigen::Index>(keep_rows.size()) != rows_ ||
      static_cast<Eigen::Index>(keep_cols.size()) != cols_) {
    throw InvalidInputError("restricted: flag sizes do not match dimensions");
  }
  std::vector<ConstraintEntry> kept;
  for (const ConstraintEntry& e : entries_) {
    if (keep_rows[e.i] && keep_cols[e.j]) kept.push_back(e);
  }
  return ConstraintMatrix(kind_, rows_, cols_, std::move(kept));
}

ViewDataset ViewDataset::from_features(Matrix f,
                                       std::optional<std::vector<int>> labels) {
  ViewDataset ds;
  ds.items = f.rows();
  ds.features = std::move(f);
  ds.labels = std::move(labels);
  return ds;
}

ViewDataset ViewDataset::from_affinity(Matrix a,
                                       std::optional<std::vector<int>> labels) {
  ViewDataset ds;
  ds.items = a.rows();
  ds.affinity = std::move(a);
  ds.labels = std::move(labels);
  return ds;
}

std::vector<std::string> validate_dataset(const ViewDataset& ds) {
  std::vector<std::string> diagnostics;
  if (!ds.features && !ds.affinity) {
    diagnostics.push_back("neither features nor affinity present");
  }
  if (ds.items <= 0) diagnostics.push_back("item count not positive");
  if (ds.features) {
    if (ds.features->rows() != ds.items) {
      diagnostics.push_back("feature row count mismatch");
    }
    if (!ds.features->allFinite()) {
      diagnostics.push_back("features contain non-finite entries");
    }
  }
  if (ds.affinity) {
    const Matrix& a = *ds.affinity;
    if (a.rows() != a.cols()) {
      diagnostics.push_back("affinity not square");
    } else if (a.rows() != ds.items) {
      diagnostics.push_back("affinity size does not match item count");
    } else {
      if (!a.allFinite()) {
        diagnostics.push_back("affinity contains non-finite entries");
      } else {
        if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
          diagnostics.push_back("affinity not symmetric within 1e-9");
        }
        if (a.minCoeff() < 0.0) {
          diagnostics.push_back("affinity has negative entries");
        }
      }
    }
  }
  if (ds.labels &&
      static_cast<Eigen::Index>(ds.labels->size()) != ds.items) {
    diagnostics.push_back("label count mismatch");
  }
  return diagnostics;
}

void PropagationParams::validate() const {
  if (!(alpha_a > 0.0 && alpha_a < 1.0)) {
    throw InvalidInputError("alpha_a must lie in (0, 1)");
  }
  if (!(alpha_b > 0.0 && alpha_b < 1.0)) {
    throw InvalidInputError("alpha_b must lie in (0, 1)");
  }
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw InvalidInputError("beta must lie in [0, 1)");
  }
  if (!(inner_tol > 0.0) || !(outer_tol > 0.0)) {
    throw InvalidInputError("tolerances must be positive");
  }
  if (max_inner_iters < 1 || max_outer_iters < 1) {
    throw InvalidInputError("iteration caps must be positive");
  }
}

void KernelSpec::validate() const {
  if (sigma && !(*sigma > 0.0)) {
    throw InvalidInputError("kernel sigma must be positive when given");
  }
}

void GraphSpec::validate(Eigen::Index items) const {
  kernel.validate();
  if (k < 1) throw InvalidInputError("graph k must be at least 1");
  if (k >= items) {
    throw InvalidInputError("graph k must be smaller than the item count (" +
                            std::to_string(k) + " >= " + std::to_string(items) +
                            ")");
  }
}

const char* to_string(GraphConstruction c) {
  switch (c) {
    case GraphConstruction::kKnn: return "knn";
    case GraphConstruction::kSr: return "sr";
    case GraphConstruction::kCwa: return "cwa";
    case GraphConstruction::kCsr: return "csr";
  }
  return "unknown";
}

GraphConstruction graph_construction_from_string(const std::string& s) {
  if (s == "knn") return GraphConstruction::kKnn;
  if (s == "sr") return GraphConstruction::kSr;
  if (s == "cwa") return GraphConstruction::kCwa;
  if (s == "csr") return GraphConstruction::kCsr;
  throw InvalidInputError("unknown graph construction: " + s);
}

}  // namespace crossprop
