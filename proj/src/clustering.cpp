#include "glfs/clustering.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "glfs/error.hpp"
#include "glfs/kernels/kernels.hpp"
#include "glfs/random.hpp"

namespace glfs {

namespace {

constexpr int kMaxLloydIterations = 300;

struct Assignment {
  int cluster;
  double distance;
};

Assignment nearest_centroid(const Matrix& x, Index j, const Matrix& centroids) {
  const auto d = static_cast<std::size_t>(x.rows());
  const std::span<const double> point(x.col(j).data(), d);
  Assignment best{0, std::numeric_limits<double>::infinity()};
  for (Index c = 0; c < centroids.cols(); ++c) {
    const double dist = kernels::squared_distance(point, {centroids.col(c).data(), d});
    if (dist < best.distance) best = {static_cast<int>(c), dist};
  }
  return best;
}

KMeansResult lloyd(const Matrix& x, int k, Rng& rng) {
  const Index n = x.cols();
  // k distinct starting samples: partial Fisher-Yates.
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (int c = 0; c < k; ++c) {
    std::uniform_int_distribution<Index> pick(c, n - 1);
    std::swap(pool[static_cast<std::size_t>(c)], pool[static_cast<std::size_t>(pick(rng))]);
  }
  Matrix centroids(x.rows(), k);
  for (int c = 0; c < k; ++c) centroids.col(c) = x.col(pool[static_cast<std::size_t>(c)]);

  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
    bool changed = false;
    for (Index j = 0; j < n; ++j) {
      const Assignment a = nearest_centroid(x, j, centroids);
      dist[static_cast<std::size_t>(j)] = a.distance;
      if (labels[static_cast<std::size_t>(j)] != a.cluster) {
        labels[static_cast<std::size_t>(j)] = a.cluster;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      // Reseed an empty cluster with the sample farthest from its centroid.
      Index far = 0;
      for (Index j = 1; j < n; ++j) {
        if (dist[static_cast<std::size_t>(j)] > dist[static_cast<std::size_t>(far)]) far = j;
      }
      --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
      labels[static_cast<std::size_t>(far)] = c;
      counts[static_cast<std::size_t>(c)] = 1;
      dist[static_cast<std::size_t>(far)] = 0.0;
    }
    centroids.setZero();
    for (Index j = 0; j < n; ++j) centroids.col(labels[static_cast<std::size_t>(j)]) += x.col(j);
    for (int c = 0; c < k; ++c) {
      const auto count = counts[static_cast<std::size_t>(c)];
      if (count > 0) centroids.col(c) /= static_cast<double>(count);
    }
  }

  KMeansResult out;
  out.inertia = 0.0;
  const auto d = static_cast<std::size_t>(x.rows());
  for (Index j = 0; j < n; ++j) {
    const int c = labels[static_cast<std::size_t>(j)];
    out.inertia += kernels::squared_distance({x.col(j).data(), d}, {centroids.col(c).data(), d});
  }
  out.labels = std::move(labels);
  out.centroids = std::move(centroids);
  return out;
}

}  // namespace

KMeansResult kmeans(const Matrix& x, int k, int restarts, std::uint64_t seed) {
  require(k >= 1, ErrorCode::InvalidParameter, "cluster count must be >= 1");
  require(k <= x.cols(), ErrorCode::InvalidParameter, "more clusters than samples");
  require(restarts >= 1, ErrorCode::InvalidParameter, "restarts must be >= 1");

  KMeansResult best;
  std::vector<double> inertias;
  for (int r = 0; r < restarts; ++r) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(r));
    KMeansResult run = lloyd(x, k, rng);
    inertias.push_back(run.inertia);
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  best.restart_inertia = std::move(inertias);
  return best;
}

std::vector<int> spectral_cluster(const SimilarityGraph& s, int k, std::uint64_t seed) {
  const Index n = s.size();
  require(k >= 1 && k <= n, ErrorCode::InvalidParameter, "cluster count must lie in [1, n]");
  const Matrix& a = s.affinity();
  const Vector deg = a.rowwise().sum();
  Vector inv_sqrt(n);
  for (Index i = 0; i < n; ++i) inv_sqrt[i] = deg[i] > 0.0 ? 1.0 / std::sqrt(deg[i]) : 0.0;

  Matrix norm_lap = -(inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal());
  norm_lap.diagonal().array() += 1.0;
  const Matrix sym = 0.5 * (norm_lap + norm_lap.transpose());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  require(eig.info() == Eigen::Success, ErrorCode::NumericalError,
          "eigen-decomposition of the normalised Laplacian failed");

  // Eigenvalues come back ascending; embedding columns are samples.
  Matrix embedding = eig.eigenvectors().leftCols(k).transpose();
  for (Index j = 0; j < n; ++j) {
    const double norm = embedding.col(j).norm();
    if (norm > 0.0) embedding.col(j) /= norm;
  }
  return kmeans(embedding, k, 10, seed).labels;
}

}  // namespace glfs
