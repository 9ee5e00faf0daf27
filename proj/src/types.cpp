#include "glfs/types.hpp"

#include <cmath>

#include "glfs/error.hpp"

namespace glfs {

DataMatrix::DataMatrix(Matrix values, std::vector<std::string> feature_ids)
    : values_(std::move(values)), feature_ids_(std::move(feature_ids)) {
  require(values_.rows() >= 1, ErrorCode::InvalidInput, "data matrix needs at least one feature");
  require(values_.cols() >= 2, ErrorCode::InvalidInput, "data matrix needs at least two samples");
  require(values_.allFinite(), ErrorCode::InvalidInput, "data matrix has non-finite entries");
  require(feature_ids_.empty() || static_cast<Index>(feature_ids_.size()) == values_.rows(),
          ErrorCode::InvalidInput, "feature id count does not match the number of rows");
}

DataMatrix DataMatrix::select_features(const std::vector<Index>& ids) const {
  Matrix out(static_cast<Index>(ids.size()), samples());
  std::vector<std::string> names;
  for (std::size_t r = 0; r < ids.size(); ++r) {
    require(ids[r] >= 0 && ids[r] < features(), ErrorCode::InvalidParameter,
            "feature index out of range");
    out.row(static_cast<Index>(r)) = values_.row(ids[r]);
    if (!feature_ids_.empty()) names.push_back(feature_ids_[static_cast<std::size_t>(ids[r])]);
  }
  return DataMatrix(std::move(out), std::move(names));
}

DataMatrix DataMatrix::select_samples(const std::vector<Index>& ids) const {
  Matrix out(features(), static_cast<Index>(ids.size()));
  for (std::size_t c = 0; c < ids.size(); ++c) {
    require(ids[c] >= 0 && ids[c] < samples(), ErrorCode::InvalidParameter,
            "sample index out of range");
    out.col(static_cast<Index>(c)) = values_.col(ids[c]);
  }
  return DataMatrix(std::move(out), feature_ids_);
}

FeatureWeights::FeatureWeights(Vector beta) : beta_(std::move(beta)) {
  for (Index i = 0; i < beta_.size(); ++i) {
    require(std::isfinite(beta_[i]), ErrorCode::InvalidInput, "feature weight is not finite");
    require(beta_[i] >= 0.0, ErrorCode::InvalidInput, "feature weight is negative");
    // Normalise -0.0 so that every reported weight is exactly nonnegative.
    if (beta_[i] == 0.0) beta_[i] = 0.0;
  }
}

std::vector<Index> FeatureWeights::support() const {
  std::vector<Index> ids;
  for (Index i = 0; i < beta_.size(); ++i) {
    if (beta_[i] > 0.0) ids.push_back(i);
  }
  return ids;
}

Index FeatureWeights::support_size() const {
  return (beta_.array() > 0.0).count();
}

}  // namespace glfs
