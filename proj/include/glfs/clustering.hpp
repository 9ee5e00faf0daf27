#pragma once

#include <cstdint>
#include <vector>

#include "glfs/graph.hpp"
#include "glfs/types.hpp"

namespace glfs {

struct KMeansResult {
  std::vector<int> labels;
  Matrix centroids;                     // features × k
  double inertia = 0.0;                 // within-cluster sum of squares
  std::vector<double> restart_inertia;  // one entry per restart
};

/// Lloyd's algorithm on the columns of x, best of `restarts` runs by inertia.
/// Each run starts from k distinct samples drawn uniformly from its own RNG
/// stream and stops at an assignment fixed point or after 300 iterations.
/// Empty clusters are reseeded with the sample farthest from its centroid.
KMeansResult kmeans(const Matrix& x, int k, int restarts, std::uint64_t seed);

/// Normalised spectral clustering: eigenvectors of I − D^{-1/2} S D^{-1/2}
/// for the k smallest eigenvalues, rows scaled to unit length, then kmeans
/// with 10 restarts.
std::vector<int> spectral_cluster(const SimilarityGraph& s, int k, std::uint64_t seed);

}  // namespace glfs
