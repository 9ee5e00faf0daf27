#pragma once

#include <optional>

#include "glfs/types.hpp"

namespace glfs {

/// Sample affinity matrix S: symmetric, entries in [0, 1], zero diagonal.
class SimilarityGraph {
 public:
  /// Validates symmetry (exact), range and the zero diagonal.
  explicit SimilarityGraph(Matrix affinity);

  const Matrix& affinity() const noexcept { return s_; }
  Index size() const noexcept { return s_.rows(); }

 private:
  Matrix s_;
};

/// D = diag(S·1), L = D − S.
struct LaplacianOperator {
  Vector degree;
  Matrix laplacian;
};

/// M = λ2 (I + λ1 L)^{-1}.
struct ManifoldKernel {
  Matrix m;
  Matrix precision;  // I + λ1 L, so that M = λ2 · precision^{-1}
  double lambda1 = 0.0;
  double lambda2 = 1.0;
};

struct GraphOptions {
  int neighbors = 5;
  /// Heat-kernel width; nullopt selects the mean off-diagonal squared distance.
  std::optional<double> width;
};

/// n×n squared Euclidean distances between the sample columns of X.
Matrix pairwise_sq_dists(const DataMatrix& x);

/// kNN graph with OR-symmetrization and heat-kernel weights
/// S_ij = exp(−‖x_i − x_j‖² / t). Distance ties go to the lower sample index.
SimilarityGraph build_knn_heat_graph(const DataMatrix& x, const GraphOptions& options = {});

/// Same, from precomputed squared distances.
SimilarityGraph build_knn_heat_graph(const Matrix& sq_dists, const GraphOptions& options);

/// Mean of the off-diagonal squared distances (the "auto" kernel width).
double mean_offdiagonal(const Matrix& sq_dists);

/// Throws invalid-input when S is not symmetric.
LaplacianOperator laplacian(const SimilarityGraph& s);
LaplacianOperator laplacian(const Matrix& s);

ManifoldKernel manifold_kernel(const LaplacianOperator& l, double lambda1, double lambda2);

}  // namespace glfs
