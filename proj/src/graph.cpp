#include "glfs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "glfs/error.hpp"
#include "glfs/kernels/kernels.hpp"

namespace glfs {

SimilarityGraph::SimilarityGraph(Matrix affinity) : s_(std::move(affinity)) {
  require(s_.rows() == s_.cols(), ErrorCode::InvalidInput, "similarity matrix must be square");
  for (Index i = 0; i < s_.rows(); ++i) {
    require(s_(i, i) == 0.0, ErrorCode::InvalidInput, "similarity matrix diagonal must be zero");
    for (Index j = 0; j < s_.cols(); ++j) {
      const double v = s_(i, j);
      require(v >= 0.0 && v <= 1.0, ErrorCode::InvalidInput,
              "similarity entries must lie in [0, 1]");
      require(v == s_(j, i), ErrorCode::InvalidInput, "similarity matrix is not symmetric");
    }
  }
}

Matrix pairwise_sq_dists(const DataMatrix& x) {
  const Matrix& v = x.values();
  const Index n = v.cols();
  const auto d = static_cast<std::size_t>(v.rows());
  Matrix out = Matrix::Zero(n, n);
  // Columns are contiguous in column-major storage.
  for (Index j = 0; j < n; ++j) {
    const std::span<const double> cj(v.col(j).data(), d);
    for (Index i = j + 1; i < n; ++i) {
      const double dist = kernels::squared_distance(std::span<const double>(v.col(i).data(), d), cj);
      out(i, j) = dist;
      out(j, i) = dist;
    }
  }
  return out;
}

double mean_offdiagonal(const Matrix& sq_dists) {
  const Index n = sq_dists.rows();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i != j) sum += sq_dists(i, j);
    }
  }
  return sum / static_cast<double>(n * (n - 1));
}

SimilarityGraph build_knn_heat_graph(const Matrix& sq_dists, const GraphOptions& options) {
  const Index n = sq_dists.rows();
  require(sq_dists.cols() == n, ErrorCode::InvalidInput, "distance matrix must be square");
  require(options.neighbors >= 1 && options.neighbors < n, ErrorCode::InvalidParameter,
          "neighbor count k must satisfy 1 <= k < n");
  double width = options.width.value_or(0.0);
  if (!options.width) {
    width = mean_offdiagonal(sq_dists);
    // All samples identical: any positive width gives weight 1.
    if (!(width > 0.0)) width = 1.0;
  }
  require(width > 0.0 && std::isfinite(width), ErrorCode::InvalidParameter,
          "kernel width t must be positive");

  const auto k = static_cast<std::size_t>(options.neighbors);
  std::vector<std::vector<bool>> edge(static_cast<std::size_t>(n),
                                      std::vector<bool>(static_cast<std::size_t>(n), false));
  std::vector<Index> order;
  for (Index i = 0; i < n; ++i) {
    order.clear();
    for (Index j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](Index a, Index b) {
                        const double da = sq_dists(i, a);
                        const double db = sq_dists(i, b);
                        return da < db || (da == db && a < b);
                      });
    for (std::size_t r = 0; r < k; ++r) {
      const auto j = static_cast<std::size_t>(order[r]);
      edge[static_cast<std::size_t>(i)][j] = true;
      edge[j][static_cast<std::size_t>(i)] = true;
    }
  }

  Matrix s = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (!edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
      // One evaluation per unordered pair keeps S bit-symmetric.
      const double w = std::exp(-sq_dists(i, j) / width);
      s(i, j) = w;
      s(j, i) = w;
    }
  }
  return SimilarityGraph(std::move(s));
}

SimilarityGraph build_knn_heat_graph(const DataMatrix& x, const GraphOptions& options) {
  require(options.neighbors >= 1 && options.neighbors < x.samples(), ErrorCode::InvalidParameter,
          "neighbor count k must satisfy 1 <= k < n");
  return build_knn_heat_graph(pairwise_sq_dists(x), options);
}

LaplacianOperator laplacian(const Matrix& s) {
  require(s.rows() == s.cols(), ErrorCode::InvalidInput, "similarity matrix must be square");
  for (Index j = 0; j < s.cols(); ++j) {
    for (Index i = 0; i < j; ++i) {
      require(s(i, j) == s(j, i), ErrorCode::InvalidInput, "similarity matrix is not symmetric");
    }
  }
  const Index n = s.rows();
  LaplacianOperator out;
  out.degree = Vector::Zero(n);
  out.laplacian = -s;
  // Self-loops cancel in D - S, so they are left out of the degree.
  for (Index i = 0; i < n; ++i) {
    double deg = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (j != i) deg += s(i, j);
    }
    out.degree[i] = deg;
    out.laplacian(i, i) = deg;
  }
  return out;
}

LaplacianOperator laplacian(const SimilarityGraph& s) { return laplacian(s.affinity()); }

ManifoldKernel manifold_kernel(const LaplacianOperator& l, double lambda1, double lambda2) {
  require(lambda1 >= 0.0 && std::isfinite(lambda1), ErrorCode::InvalidParameter,
          "lambda1 must be nonnegative");
  require(lambda2 > 0.0 && std::isfinite(lambda2), ErrorCode::InvalidParameter,
          "lambda2 must be positive");
  const Index n = l.laplacian.rows();
  Matrix system = lambda1 * l.laplacian;
  system.diagonal().array() += 1.0;
  Eigen::LLT<Matrix> llt(system);
  require(llt.info() == Eigen::Success, ErrorCode::NumericalError,
          "I + lambda1*L is not positive definite; the Laplacian is corrupted");
  ManifoldKernel out;
  out.m = llt.solve(Matrix::Identity(n, n)) * lambda2;
  const Matrix sym = 0.5 * (out.m + out.m.transpose());
  out.m = sym;
  out.precision = std::move(system);
  out.lambda1 = lambda1;
  out.lambda2 = lambda2;
  return out;
}

}  // namespace glfs
