#pragma once

#include <vector>

#include "glfs/graph.hpp"
#include "glfs/types.hpp"

namespace glfs {

/// Laplacian Score per feature (smaller = more important):
///   f̃_r = f_r − (f_rᵀ D 1 / 1ᵀ D 1) 1,
///   score_r = f̃_rᵀ L f̃_r / f̃_rᵀ D f̃_r.
/// Features with f̃_rᵀ D f̃_r = 0 score +∞. Throws invalid-input when the
/// graph has no edges.
Vector laplacian_score(const DataMatrix& x, const SimilarityGraph& s);

enum class VarianceCriterion {
  Trace,        // LapAOFS: minimise Tr(Z_𝒢^{-1})
  Determinant,  // LapDOFS: maximise log det Z_𝒢
};

/// Greedy forward selection on Z_𝒢 = X^𝒢 (I + λ1 L) (X^𝒢)ᵀ + λ2 I. Each round
/// adds the feature with the best criterion value; ties go to the lowest
/// index. Returns k feature indices in selection order; `values`, if given,
/// receives the criterion value after each addition.
std::vector<Index> greedy_variance_select(const DataMatrix& x, const LaplacianOperator& l,
                                          double lambda1, double lambda2, Index k,
                                          VarianceCriterion criterion,
                                          std::vector<double>* values = nullptr);

/// Criterion value for an explicit feature set (Tr(Z^{-1}) or log det Z),
/// by direct factorization. Reference for the greedy update.
double variance_criterion(const DataMatrix& x, const LaplacianOperator& l, double lambda1,
                          double lambda2, const std::vector<Index>& features,
                          VarianceCriterion criterion);

}  // namespace glfs
