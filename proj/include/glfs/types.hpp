#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

namespace glfs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// d×n data matrix: row i is feature f_i, column j is sample x_j.
class DataMatrix {
 public:
  DataMatrix() = default;

  /// Validates finiteness and shape (d ≥ 1, n ≥ 2).
  explicit DataMatrix(Matrix values, std::vector<std::string> feature_ids = {});

  const Matrix& values() const noexcept { return values_; }
  Index features() const noexcept { return values_.rows(); }
  Index samples() const noexcept { return values_.cols(); }
  const std::vector<std::string>& feature_ids() const noexcept { return feature_ids_; }

  /// Rows `ids` in the given order (the selected feature space X^𝒢).
  DataMatrix select_features(const std::vector<Index>& ids) const;
  /// Columns `ids` in the given order.
  DataMatrix select_samples(const std::vector<Index>& ids) const;

 private:
  Matrix values_;
  std::vector<std::string> feature_ids_;
};

/// Nonnegative feature weights β (the relaxed selection indicator).
class FeatureWeights {
 public:
  FeatureWeights() = default;
  /// Throws invalid-input on any negative or non-finite entry.
  explicit FeatureWeights(Vector beta);

  static FeatureWeights zeros(Index d) { return FeatureWeights(Vector::Zero(d)); }
  static FeatureWeights ones(Index d) { return FeatureWeights(Vector::Ones(d)); }

  const Vector& values() const noexcept { return beta_; }
  Index size() const noexcept { return beta_.size(); }
  double operator[](Index i) const { return beta_[i]; }

  /// Indices with β_i > 0, ascending.
  std::vector<Index> support() const;
  Index support_size() const;
  double l1_norm() const { return beta_.sum(); }

 private:
  Vector beta_;
};

}  // namespace glfs
