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

#ifndef CROSSPROP_RETRIEVAL_HPP_
#define CROSSPROP_RETRIEVAL_HPP_

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "crossprop/intra_propagation.hpp"
#include "crossprop/types.hpp"

namespace crossprop {

/// View A indexes the rows of a propagation field, view B the columns. By the
/// usual dataset convention view A holds text items and view B image items.
enum class ViewSide { kA, kB };

struct QueryRef {
  ViewSide view = ViewSide::kA;
  int index = 0;
};

/// Gallery items ordered by score descending; ties resolve to the smaller
/// index.
struct RankedList {
  QueryRef query;
  std::vector<std::pair<int, double>> results;
};

/// Ranks the opposite view by correlation to the query: an A-query sorts its
/// row of the field, a B-query its column.
RankedList rank_cross_view(const PropagationField& field, QueryRef query);

/// AP = (1/|relevant|) * sum over relevant items at rank r of
/// (#relevant in top r) / r. Throws UndefinedApError when relevant is empty.
double average_precision(const RankedList& ranked,
                         const std::unordered_set<int>& relevant);

/// Which retrieval directions to evaluate. Image queries come from view B
/// (ranking view A); text queries come from view A (ranking view B).
enum class RetrievalDirection { kBoth, kImageQuery, kTextQuery };

struct QueryAp {
  ViewSide view;
  int index;
  double ap;
};

struct RetrievalReport {
  std::vector<QueryAp> per_query;
  double map_image_query = 0.0;
  double map_text_query = 0.0;
  double map_average = 0.0;
  int evaluated_image_queries = 0;
  int evaluated_text_queries = 0;
  int skipped_image_queries = 0;  // class absent from the gallery
  int skipped_text_queries = 0;
};

/// MAP over all rows/columns of the field, with relevance defined as label
/// equality. Queries whose class is absent from the gallery are skipped and
/// counted. map_average is the mean over the evaluated directions.
RetrievalReport evaluate_map(const PropagationField& field,
                             const std::vector<int>& labels_a,
                             const std::vector<int>& labels_b,
                             RetrievalDirection direction = RetrievalDirection::kBoth);

/// field[rows, cols] as a dense copy; used to restrict evaluation to a test
/// or validation subset.
PropagationField slice_field(const PropagationField& field,
                             const std::vector<int>& rows,
                             const std::vector<int>& cols);

std::vector<int> slice_labels(const std::vector<int>& labels,
                              const std::vector<int>& indices);

/// One grid cell of the parameter search. alpha applies to both views.
struct GridConfig {
  double alpha = 0.05;
  double beta = 0.5;
  int k = 10;
  GraphConstruction construction = GraphConstruction::kKnn;
};

struct GridAxes {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<int> ks;
  std::vector<GraphConstruction> constructions;

  std::vector<GridConfig> enumerate() const;
};

struct FoldRecord {
  GridConfig config;
  int fold = 0;
  double map_image_query = 0.0;
  double map_text_query = 0.0;
  double map_average = 0.0;
};

struct GridSearchResult {
  GridConfig best;
  double best_score = 0.0;
  std::vector<FoldRecord> table;
  std::vector<int> fold_of_a;  // fold id per view-A item
  std::vector<int> fold_of_b;
};

struct GridSearchOptions {
  int folds = 5;
  std::uint64_t seed = 42;
  PropagationParams base;        // tolerances and caps; alpha/beta overridden
  IntraParams base_intra;        // used by cwa construction
  KernelSpec kernel;             // kernel for feature-backed views
  bool derive_intra_constraints = true;  // from in-fold training labels
};

/// Stratified k-fold cross-validation over a labeled two-view training set.
/// Per fold, the given inter constraints are restricted to training items and
/// intra constraints are re-derived from training labels; graphs span all
/// items of the fold's view. Scores are validation-set MAP averages; the best
/// cell is the argmax of the fold-mean map_average, ties resolving to the
/// earlier cell in grid order.
GridSearchResult grid_search(const ViewDataset& view_a, const ViewDataset& view_b,
                             const ConstraintMatrix& inter, const GridAxes& axes,
                             const GridSearchOptions& options);

}  // namespace crossprop

#endif  // CROSSPROP_RETRIEVAL_HPP_
