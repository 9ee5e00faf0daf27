#include "glfs/classifier.hpp"

#include <algorithm>
#include <numeric>

#include "glfs/error.hpp"
#include "glfs/random.hpp"

namespace glfs {

ClassifierModel laprls_fit(const Matrix& x_train, const Vector& y, double lambda1, double lambda2,
                           const Matrix& laplacian, std::vector<Index> features) {
  const Index n = x_train.cols();
  require(y.size() == n, ErrorCode::InvalidInput, "target count does not match the sample count");
  require(laplacian.rows() == n && laplacian.cols() == n, ErrorCode::InvalidInput,
          "Laplacian size does not match the training sample count");
  require(lambda1 >= 0.0, ErrorCode::InvalidParameter, "lambda1 must be nonnegative");
  require(lambda2 > 0.0, ErrorCode::InvalidParameter, "lambda2 must be positive");
  require(features.empty() || static_cast<Index>(features.size()) == x_train.rows(),
          ErrorCode::InvalidInput, "feature id count does not match the training rows");

  ClassifierModel model;
  model.features = std::move(features);
  model.x_train = x_train;
  model.y = y;
  model.lambda1 = lambda1;
  model.lambda2 = lambda2;
  model.laplacian = laplacian;

  const Index g = x_train.rows();
  if (g == 0) {
    model.coefficients = Vector::Zero(0);
    return model;
  }
  Matrix z = x_train * x_train.transpose() + lambda1 * (x_train * laplacian * x_train.transpose());
  z.diagonal().array() += lambda2;
  const Matrix zs = 0.5 * (z + z.transpose());
  const Eigen::LLT<Matrix> llt(zs);
  require(llt.info() == Eigen::Success, ErrorCode::NumericalError, "Z is not positive definite");
  model.coefficients = llt.solve(x_train * y);
  return model;
}

Vector laprls_response(const ClassifierModel& model, const Matrix& x_test) {
  require(x_test.rows() == model.x_train.rows(), ErrorCode::InvalidInput,
          "test data has a different number of selected features");
  if (model.coefficients.size() == 0) return Vector::Zero(x_test.cols());
  return x_test.transpose() * model.coefficients;
}

std::vector<int> laprls_predict(const ClassifierModel& model, const Matrix& x_test) {
  const Vector response = laprls_response(model, x_test);
  std::vector<int> out(static_cast<std::size_t>(response.size()));
  for (Index j = 0; j < response.size(); ++j) {
    out[static_cast<std::size_t>(j)] = response[j] >= 0.5 ? 1 : 0;
  }
  return out;
}

namespace {

Vector binary_targets(const std::vector<int>& labels) {
  Vector y(static_cast<Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    require(labels[i] == 0 || labels[i] == 1, ErrorCode::InvalidInput,
            "classifier labels must be coded 0/1");
    y[static_cast<Index>(i)] = labels[i];
  }
  return y;
}

GraphOptions clamp_neighbors(GraphOptions options, Index n) {
  options.neighbors = static_cast<int>(std::min<Index>(options.neighbors, n - 1));
  return options;
}

}  // namespace

TrainedClassifier train_glfs_classifier(const DataMatrix& x, const std::vector<int>& labels,
                                        double lambda, const SelectionSettings& settings) {
  const Vector y = binary_targets(labels);
  require(y.size() == x.samples(), ErrorCode::InvalidInput,
          "label count does not match the sample count");
  const SimilarityGraph graph = build_knn_heat_graph(x, clamp_neighbors(settings.graph, x.samples()));
  const LaplacianOperator lap = laplacian(graph);
  const ManifoldKernel m = manifold_kernel(lap, settings.lambda1, settings.lambda2);
  const SolveResult sol =
      owd_minimize(x, m, lambda, FeatureWeights::ones(x.features()), settings.optimizer);

  TrainedClassifier out;
  out.selected = sol.beta.support();
  const DataMatrix selected_rows =
      out.selected.empty() ? DataMatrix() : x.select_features(out.selected);
  const Matrix xs = out.selected.empty() ? Matrix(0, x.samples()) : selected_rows.values();
  out.model = laprls_fit(xs, y, settings.lambda1, settings.lambda2, lap.laplacian, out.selected);
  return out;
}

std::vector<int> predict_glfs_classifier(const TrainedClassifier& trained, const DataMatrix& x) {
  if (trained.selected.empty()) return std::vector<int>(static_cast<std::size_t>(x.samples()), 0);
  return laprls_predict(trained.model, x.select_features(trained.selected).values());
}

std::vector<int> fold_assignment(Index n, int folds, std::uint64_t seed) {
  require(folds >= 2 && folds <= n, ErrorCode::InvalidParameter,
          "fold count must lie in [2, n]");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng = make_rng(seed, 0);
  for (Index i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<Index> pick(0, i);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<int> fold(static_cast<std::size_t>(n));
  for (Index r = 0; r < n; ++r) {
    fold[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = static_cast<int>(r % folds);
  }
  return fold;
}

CvResult kfold_cv(const DataMatrix& x, const std::vector<int>& labels, int folds,
                  const std::vector<double>& lambda_grid, std::uint64_t seed,
                  const SelectionSettings& settings) {
  require(!lambda_grid.empty(), ErrorCode::InvalidParameter, "penalty grid is empty");
  require(static_cast<Index>(labels.size()) == x.samples(), ErrorCode::InvalidInput,
          "label count does not match the sample count");
  binary_targets(labels);
  const std::vector<int> fold = fold_assignment(x.samples(), folds, seed);

  CvResult out;
  for (double lambda : lambda_grid) {
    CvEntry entry;
    entry.lambda = lambda;
    for (int f = 0; f < folds; ++f) {
      std::vector<Index> train, test;
      std::vector<int> train_labels, test_labels;
      for (Index j = 0; j < x.samples(); ++j) {
        const auto sj = static_cast<std::size_t>(j);
        if (fold[sj] == f) {
          test.push_back(j);
          test_labels.push_back(labels[sj]);
        } else {
          train.push_back(j);
          train_labels.push_back(labels[sj]);
        }
      }
      const TrainedClassifier trained =
          train_glfs_classifier(x.select_samples(train), train_labels, lambda, settings);
      const std::vector<int> predicted = predict_glfs_classifier(trained, x.select_samples(test));
      for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] != test_labels[i]) ++entry.errors;
      }
    }
    entry.support = static_cast<Index>(
        train_glfs_classifier(x, labels, lambda, settings).selected.size());
    out.entries.push_back(entry);
  }

  const auto best = std::min_element(out.entries.begin(), out.entries.end(),
                                     [](const CvEntry& a, const CvEntry& b) {
                                       return a.errors < b.errors ||
                                              (a.errors == b.errors && a.support < b.support);
                                     });
  out.best_lambda = best->lambda;
  out.best_errors = best->errors;
  return out;
}

}  // namespace glfs
