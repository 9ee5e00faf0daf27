#pragma once

#include <cstdint>
#include <vector>

#include "glfs/types.hpp"

namespace glfs {

struct SimulationConfig {
  Index n_samples = 400;
  Index n_informative = 4;
  Index n_noise = 1000;
  double noise_sigma = 0.2;
  int n_clusters = 4;
  double cluster_mean_scale = 1.0;
  double informative_within_std = 0.1;

  void validate() const;
};

struct LabeledDataset {
  DataMatrix x;
  std::vector<int> labels;
  std::vector<Index> true_feature_ids;  // empty for real data
};

/// Rows of the ±1 code table used as cluster centres on the informative
/// features. Every pair of rows differs in at least two positions.
inline constexpr int kClusterCodes[8][4] = {
    {+1, +1, +1, +1}, {+1, +1, -1, -1}, {+1, -1, +1, -1}, {+1, -1, -1, +1},
    {-1, -1, -1, -1}, {-1, -1, +1, +1}, {-1, +1, -1, +1}, {-1, +1, +1, -1},
};

/// Gaussian-mixture data on 4 informative features plus i.i.d. N(0, σ²)
/// noise features. Samples are grouped by cluster (equal sizes, remainder in
/// the last cluster). Informative rows are generated first and then moved to
/// the positions recorded in true_feature_ids by a seeded permutation.
LabeledDataset simulate(const SimulationConfig& config, std::uint64_t seed);

}  // namespace glfs
