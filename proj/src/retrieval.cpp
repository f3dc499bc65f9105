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

#include "crossprop/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "crossprop/constraints.hpp"
#include "crossprop/graph_pipeline.hpp"
#include "crossprop/inter_propagation.hpp"
#include "crossprop/rng.hpp"

namespace crossprop {
namespace {

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

RankedList rank_cross_view(const PropagationField& field, QueryRef query) {
  const Eigen::Index gallery_size =
      query.view == ViewSide::kA ? field.cols() : field.rows();
  const Eigen::Index query_range =
      query.view == ViewSide::kA ? field.rows() : field.cols();
  if (query.index < 0 || query.index >= query_range) {
    throw InvalidInputError("rank_cross_view: query index out of range");
  }

  RankedList ranked;
  ranked.query = query;
  ranked.results.reserve(static_cast<std::size_t>(gallery_size));
  for (int j = 0; j < gallery_size; ++j) {
    const double score = query.view == ViewSide::kA ? field(query.index, j)
                                                    : field(j, query.index);
    ranked.results.emplace_back(j, score);
  }
  std::sort(ranked.results.begin(), ranked.results.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return ranked;
}

double average_precision(const RankedList& ranked,
                         const std::unordered_set<int>& relevant) {
  if (relevant.empty()) {
    throw UndefinedApError("average_precision: empty relevant set");
  }
  int hits = 0;
  double sum = 0.0;
  int rank = 0;
  for (const auto& [index, score] : ranked.results) {
    ++rank;
    if (relevant.count(index)) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(rank);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

RetrievalReport evaluate_map(const PropagationField& field,
                             const std::vector<int>& labels_a,
                             const std::vector<int>& labels_b,
                             RetrievalDirection direction) {
  if (static_cast<Eigen::Index>(labels_a.size()) != field.rows() ||
      static_cast<Eigen::Index>(labels_b.size()) != field.cols()) {
    throw InvalidInputError("evaluate_map: label sizes do not match the field");
  }

  RetrievalReport report;
  std::vector<double> image_aps;
  std::vector<double> text_aps;

  // Text queries: view-A items ranking the view-B gallery.
  if (direction == RetrievalDirection::kBoth ||
      direction == RetrievalDirection::kTextQuery) {
    for (int i = 0; i < static_cast<int>(labels_a.size()); ++i) {
      std::unordered_set<int> relevant;
      for (int j = 0; j < static_cast<int>(labels_b.size()); ++j) {
        if (labels_b[static_cast<std::size_t>(j)] ==
            labels_a[static_cast<std::size_t>(i)]) {
          relevant.insert(j);
        }
      }
      if (relevant.empty()) {
        ++report.skipped_text_queries;
        continue;
      }
      const double ap =
          average_precision(rank_cross_view(field, {ViewSide::kA, i}), relevant);
      text_aps.push_back(ap);
      report.per_query.push_back({ViewSide::kA, i, ap});
    }
    report.evaluated_text_queries = static_cast<int>(text_aps.size());
    report.map_text_query = mean(text_aps);
  }

  // Image queries: view-B items ranking the view-A gallery.
  if (direction == RetrievalDirection::kBoth ||
      direction == RetrievalDirection::kImageQuery) {
    for (int j = 0; j < static_cast<int>(labels_b.size()); ++j) {
      std::unordered_set<int> relevant;
      for (int i = 0; i < static_cast<int>(labels_a.size()); ++i) {
        if (labels_a[static_cast<std::size_t>(i)] ==
            labels_b[static_cast<std::size_t>(j)]) {
          relevant.insert(i);
        }
      }
      if (relevant.empty()) {
        ++report.skipped_image_queries;
        continue;
      }
      const double ap =
          average_precision(rank_cross_view(field, {ViewSide::kB, j}), relevant);
      image_aps.push_back(ap);
      report.per_query.push_back({ViewSide::kB, j, ap});
    }
    report.evaluated_image_queries = static_cast<int>(image_aps.size());
    report.map_image_query = mean(image_aps);
  }

  switch (direction) {
    case RetrievalDirection::kBoth:
      report.map_average = (report.map_text_query + report.map_image_query) / 2.0;
      break;
    case RetrievalDirection::kTextQuery:
      report.map_average = report.map_text_query;
      break;
    case RetrievalDirection::kImageQuery:
      report.map_average = report.map_image_query;
      break;
  }
  return report;
}

PropagationField slice_field(const PropagationField& field,
                             const std::vector<int>& rows,
                             const std::vector<int>& cols) {
  PropagationField out(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          field(rows[r], cols[c]);
    }
  }
  return out;
}

std::vector<int> slice_labels(const std::vector<int>& labels,
                              const std::vector<int>& indices) {
  std::vector<int> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(labels[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<GridConfig> GridAxes::enumerate() const {
  // Graph-shaping axes vary slowest so graph work can be reused.
  std::vector<GridConfig> cells;
  for (GraphConstruction construction : constructions) {
    for (int k : ks) {
      for (double alpha : alphas) {
        for (double beta : betas) {
          cells.push_back({alpha, beta, k, construction});
        }
      }
    }
  }
  return cells;
}

namespace {

// Deals each class's shuffled members round-robin over folds; every fold then
// holds at least floor(class size / folds) members of each class.
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds,
                                  std::uint64_t seed) {
  std::map<int, std::vector<int>> by_class;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    by_class[labels[static_cast<std::size_t>(i)]].push_back(i);
  }
  for (const auto& [label, members] : by_class) {
    if (static_cast<int>(members.size()) < folds) {
      throw InvalidInputError(
          "grid_search: class " + std::to_string(label) + " has only " +
          std::to_string(members.size()) + " items; cannot stratify into " +
          std::to_string(folds) + " folds");
    }
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<int> fold_of(labels.size(), 0);
    for (auto& [label, members] : by_class) {
      std::vector<int> shuffled = members;
      rng.shuffle(shuffled);
      for (std::size_t t = 0; t < shuffled.size(); ++t) {
        fold_of[static_cast<std::size_t>(shuffled[t])] =
            static_cast<int>(t % static_cast<std::size_t>(folds));
      }
    }
    bool ok = true;
    for (const auto& [label, members] : by_class) {
      std::vector<int> counts(static_cast<std::size_t>(folds), 0);
      for (int i : members) ++counts[static_cast<std::size_t>(fold_of[i])];
      for (int c : counts) ok = ok && c > 0;
    }
    if (ok) return fold_of;
    std::cerr << "grid_search: fold " << attempt
              << " left a class empty; re-stratifying\n";
  }
  throw InvalidInputError("grid_search: stratification failed repeatedly");
}

}  // namespace

GridSearchResult grid_search(const ViewDataset& view_a, const ViewDataset& view_b,
                             const ConstraintMatrix& inter, const GridAxes& axes,
                             const GridSearchOptions& options) {
  if (options.folds < 2) {
    throw InvalidInputError("grid_search: folds must be at least 2");
  }
  if (axes.alphas.empty() || axes.betas.empty() || axes.ks.empty() ||
      axes.constructions.empty()) {
    throw InvalidInputError("grid_search: empty grid axis");
  }
  if (!view_a.labels || !view_b.labels) {
    throw InvalidInputError("grid_search: both views need labels");
  }
  if (inter.kind() != ConstraintKind::kInter ||
      inter.rows() != view_a.items || inter.cols() != view_b.items) {
    throw InvalidInputError("grid_search: constraint dimensions do not match");
  }

  const std::vector<int>& labels_a = *view_a.labels;
  const std::vector<int>& labels_b = *view_b.labels;
  const std::vector<int> fold_a = stratified_folds(labels_a, options.folds,
                                                   options.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::vector<int> fold_b = stratified_folds(labels_b, options.folds,
                                                   options.seed ^ 0xc2b2ae3d27d4eb4fULL);

  const bool needs_intra =
      std::any_of(axes.constructions.begin(), axes.constructions.end(),
                  [](GraphConstruction c) {
                    return c == GraphConstruction::kCwa ||
                           c == GraphConstruction::kCsr;
                  });
  std::optional<ConstraintMatrix> intra_a;
  std::optional<ConstraintMatrix> intra_b;
  if (needs_intra && options.derive_intra_constraints) {
    intra_a = intra_constraints_from_labels(labels_a);
    intra_b = intra_constraints_from_labels(labels_b);
  }

  const std::vector<GridConfig> cells = axes.enumerate();
  std::vector<std::vector<FoldRecord>> records(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    records[c].resize(static_cast<std::size_t>(options.folds));
  }

  for (GraphConstruction construction : axes.constructions) {
    for (int k : axes.ks) {
      GraphSpec spec{k, options.kernel, construction};
      spec.validate(std::min(view_a.items, view_b.items));
      const AffinityMatrix aff_a = view_affinity(view_a, options.kernel, k);
      const AffinityMatrix aff_b = view_affinity(view_b, options.kernel, k);
      const bool fold_independent_graph =
          construction == GraphConstruction::kKnn ||
          construction == GraphConstruction::kSr;
      std::optional<NormalizedSimilarity> cached_a;
      std::optional<NormalizedSimilarity> cached_b;

      for (int fold = 0; fold < options.folds; ++fold) {
        std::vector<char> train_a(labels_a.size());
        std::vector<char> train_b(labels_b.size());
        std::vector<int> valid_a_idx;
        std::vector<int> valid_b_idx;
        for (std::size_t i = 0; i < labels_a.size(); ++i) {
          train_a[i] = fold_a[i] != fold;
          if (!train_a[i]) valid_a_idx.push_back(static_cast<int>(i));
        }
        for (std::size_t j = 0; j < labels_b.size(); ++j) {
          train_b[j] = fold_b[j] != fold;
          if (!train_b[j]) valid_b_idx.push_back(static_cast<int>(j));
        }
        const ConstraintMatrix z_fold = inter.restricted(train_a, train_b);

        auto similarity_for =
            [&](const AffinityMatrix& aff,
                const std::optional<ConstraintMatrix>& intra_full,
                const std::vector<char>& train_flags,
                std::optional<NormalizedSimilarity>& cache)
            -> NormalizedSimilarity {
          if (fold_independent_graph) {
            if (!cache) {
              cache = build_graph_from_affinity(aff, spec, nullptr,
                                                options.base_intra)
                          .similarity;
            }
            return *cache;
          }
          if (!intra_full) {
            throw InvalidInputError("grid_search: " +
                                    std::string(to_string(construction)) +
                                    " requires intra constraints");
          }
          const ConstraintMatrix intra_fold =
              intra_full->restricted(train_flags, train_flags);
          return build_graph_from_affinity(aff, spec, &intra_fold,
                                           options.base_intra)
              .similarity;
        };

        const NormalizedSimilarity s_a =
            similarity_for(aff_a, intra_a, train_a, cached_a);
        const NormalizedSimilarity s_b =
            similarity_for(aff_b, intra_b, train_b, cached_b);

        for (std::size_t c = 0; c < cells.size(); ++c) {
          const GridConfig& cell = cells[c];
          if (cell.construction != construction || cell.k != k) continue;
          PropagationParams params = options.base;
          params.alpha_a = cell.alpha;
          params.alpha_b = cell.alpha;
          params.beta = cell.beta;

          FoldRecord record;
          record.config = cell;
          record.fold = fold;
          try {
            const PropagationField field =
                propagate_inter(s_a, s_b, z_fold, params);
            const PropagationField valid =
                slice_field(field, valid_a_idx, valid_b_idx);
            const RetrievalReport report =
                evaluate_map(valid, slice_labels(labels_a, valid_a_idx),
                             slice_labels(labels_b, valid_b_idx));
            record.map_image_query = report.map_image_query;
            record.map_text_query = report.map_text_query;
            record.map_average = report.map_average;
          } catch (const NoConvergenceError& e) {
            std::cerr << "grid_search: cell (alpha=" << cell.alpha
                      << ", beta=" << cell.beta << ", k=" << cell.k << ", "
                      << to_string(cell.construction) << ") fold " << fold
                      << " did not converge: " << e.what() << "\n";
            const double nan = std::numeric_limits<double>::quiet_NaN();
            record.map_image_query = nan;
            record.map_text_query = nan;
            record.map_average = nan;
          }
          records[c][static_cast<std::size_t>(fold)] = record;
        }
      }
    }
  }

  GridSearchResult result;
  result.fold_of_a = fold_a;
  result.fold_of_b = fold_b;
  result.best_score = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    double total = 0.0;
    bool usable = true;
    for (const FoldRecord& r : records[c]) {
      result.table.push_back(r);
      if (std::isnan(r.map_average)) usable = false;
      total += r.map_average;
    }
    const double score = total / static_cast<double>(options.folds);
    if (usable && score > result.best_score) {
      result.best_score = score;
      result.best = cells[c];
      found = true;
    }
  }
  if (!found) {
    throw NoConvergenceError("grid_search: every grid cell failed", 0.0);
  }
  return result;
}

}  // namespace crossprop
