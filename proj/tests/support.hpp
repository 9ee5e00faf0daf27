#pragma once

#include <cstdint>
#include <random>

#include "glfs/graph.hpp"
#include "glfs/random.hpp"
#include "glfs/types.hpp"

namespace glfs::testing {

inline Matrix gaussian(Index rows, Index cols, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = dist(rng);
  return out;
}

inline Vector uniform_vector(Index n, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector out(n);
  for (Index i = 0; i < n; ++i) out[i] = dist(rng);
  return out;
}

// Dense symmetric affinity with entries in [0, 1] and zero diagonal.
inline Matrix random_affinity(Index n, Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Matrix s = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) s(i, j) = s(j, i) = dist(rng);
  return s;
}

struct Instance {
  DataMatrix x;
  LaplacianOperator l;
  double lambda1;
  double lambda2;
  ManifoldKernel m;
  Vector beta;
};

// Seeded random problem: n ∈ [5,20], d ∈ [3,30], λ1 ∈ {0, 0.5, 5}, λ2 ∈ {0.01, 1}.
inline Instance random_instance(std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  const Index n = std::uniform_int_distribution<Index>(5, 20)(rng);
  const Index d = std::uniform_int_distribution<Index>(3, 30)(rng);
  const double l1s[] = {0.0, 0.5, 5.0};
  const double l2s[] = {0.01, 1.0};
  const double lambda1 = l1s[std::uniform_int_distribution<int>(0, 2)(rng)];
  const double lambda2 = l2s[std::uniform_int_distribution<int>(0, 1)(rng)];
  DataMatrix x(gaussian(d, n, rng));
  LaplacianOperator l = laplacian(build_knn_heat_graph(x, GraphOptions{std::min<int>(5, n - 1), {}}));
  ManifoldKernel m = manifold_kernel(l, lambda1, lambda2);
  Vector beta = uniform_vector(d, rng, 0.1, 2.0);
  return {std::move(x), std::move(l), lambda1, lambda2, std::move(m), std::move(beta)};
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace glfs::testing
