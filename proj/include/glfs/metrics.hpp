#pragma once

#include <vector>

#include "glfs/types.hpp"

namespace glfs {

/// 1-based rank of every feature when weights are sorted in decreasing order
/// (ties: lower index first).
std::vector<Index> descending_ranks(const Vector& weights);

/// Indices of the k largest weights, best first, ties by lower index.
std::vector<Index> top_k_features(const Vector& weights, Index k);

/// Score = ¼ Σ 1/(max{4, rank(f_i)} − 3) over the four planted features.
double ranking_score(const Vector& weights, const std::vector<Index>& true_ids);

/// I(a;b)/√(H(a)H(b)) with natural-log entropies; 1 when both partitions are
/// trivial, 0 when exactly one is.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

/// Leave-one-out 1-NN accuracy on the columns of x (nearest other sample by
/// Euclidean distance, ties by lower index).
double loo_1nn_accuracy(const Matrix& x, const std::vector<int>& labels);

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace glfs
