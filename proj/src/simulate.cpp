#include "glfs/simulate.hpp"

#include <numeric>
#include <random>

#include "glfs/error.hpp"
#include "glfs/random.hpp"

namespace glfs {

void SimulationConfig::validate() const {
  require(n_samples >= 2, ErrorCode::InvalidParameter, "need at least two samples");
  require(n_informative == 4, ErrorCode::InvalidParameter,
          "the cluster code table has exactly four informative features");
  require(n_noise >= 0, ErrorCode::InvalidParameter, "noise feature count must be >= 0");
  require(noise_sigma >= 0.0, ErrorCode::InvalidParameter, "sigma must be >= 0");
  require(n_clusters >= 1 && n_clusters <= 8, ErrorCode::InvalidParameter,
          "cluster count must lie in [1, 8]");
  require(n_clusters <= n_samples, ErrorCode::InvalidParameter,
          "more clusters than samples");
  require(informative_within_std >= 0.0, ErrorCode::InvalidParameter,
          "within-cluster std must be >= 0");
}

LabeledDataset simulate(const SimulationConfig& config, std::uint64_t seed) {
  config.validate();
  const Index n = config.n_samples;
  const Index d = config.n_informative + config.n_noise;
  Rng rng = make_rng(seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<int> labels(static_cast<std::size_t>(n));
  const Index base = n / config.n_clusters;
  for (Index j = 0; j < n; ++j) {
    labels[static_cast<std::size_t>(j)] =
        static_cast<int>(std::min<Index>(j / base, config.n_clusters - 1));
  }

  Matrix raw(d, n);
  for (Index j = 0; j < n; ++j) {
    const int c = labels[static_cast<std::size_t>(j)];
    for (Index r = 0; r < config.n_informative; ++r) {
      raw(r, j) = config.cluster_mean_scale * kClusterCodes[c][r] +
                  config.informative_within_std * normal(rng);
    }
  }
  for (Index r = config.n_informative; r < d; ++r) {
    for (Index j = 0; j < n; ++j) raw(r, j) = config.noise_sigma * normal(rng);
  }

  // Row r of `raw` lands at row perm[r] of the output.
  std::vector<Index> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = d - 1; i > 0; --i) {
    std::uniform_int_distribution<Index> pick(0, i);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  Matrix x(d, n);
  for (Index r = 0; r < d; ++r) x.row(perm[static_cast<std::size_t>(r)]) = raw.row(r);

  LabeledDataset out{DataMatrix(std::move(x)), std::move(labels), {}};
  out.true_feature_ids.assign(perm.begin(), perm.begin() + config.n_informative);
  return out;
}

}  // namespace glfs
