#pragma once

#include <cstdint>
#include <vector>

#include "glfs/graph.hpp"
#include "glfs/optimizer.hpp"
#include "glfs/types.hpp"

namespace glfs {

/// Laplacian-regularised least squares on a selected feature space.
/// Z = X^𝒢 (X^𝒢)ᵀ + λ1 X^𝒢 L (X^𝒢)ᵀ + λ2 I and w = Z^{-1} X^𝒢 y, so
/// y_new = yᵀ (X^𝒢)ᵀ Z^{-1} x_new = wᵀ x_new.
struct ClassifierModel {
  std::vector<Index> features;  // ids in the original feature space, if known
  Matrix x_train;               // |𝒢| × n_train
  Vector y;                     // 0/1 targets
  double lambda1 = 0.0;
  double lambda2 = 1.0;
  Matrix laplacian;
  Vector coefficients;          // w
};

ClassifierModel laprls_fit(const Matrix& x_train, const Vector& y, double lambda1, double lambda2,
                           const Matrix& laplacian, std::vector<Index> features = {});

/// Continuous responses y_new for the columns of x_test (|𝒢| rows).
Vector laprls_response(const ClassifierModel& model, const Matrix& x_test);

/// Class 1 when y_new ≥ 0.5, else 0.
std::vector<int> laprls_predict(const ClassifierModel& model, const Matrix& x_test);

struct SelectionSettings {
  GraphOptions graph;
  double lambda1 = 0.1;
  double lambda2 = 0.01;
  OptimizerConfig optimizer;
};

/// Fits a classifier on the GLFS support selected at penalty λ.
struct TrainedClassifier {
  ClassifierModel model;
  std::vector<Index> selected;
};

TrainedClassifier train_glfs_classifier(const DataMatrix& x, const std::vector<int>& labels,
                                        double lambda, const SelectionSettings& settings);

std::vector<int> predict_glfs_classifier(const TrainedClassifier& trained, const DataMatrix& x);

struct CvEntry {
  double lambda = 0.0;
  int errors = 0;
  Index support = 0;  // GLFS support on the full training data at this λ
};

struct CvResult {
  double best_lambda = 0.0;
  int best_errors = 0;
  std::vector<CvEntry> entries;
};

/// Shuffled round-robin fold ids (seeded).
std::vector<int> fold_assignment(Index n, int folds, std::uint64_t seed);

/// K-fold cross-validation of the GLFS + LapRLS classifier over a penalty
/// grid. Fewest total misclassifications wins; ties go to the smaller support.
CvResult kfold_cv(const DataMatrix& x, const std::vector<int>& labels, int folds,
                  const std::vector<double>& lambda_grid, std::uint64_t seed,
                  const SelectionSettings& settings);

}  // namespace glfs
