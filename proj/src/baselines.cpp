#include "glfs/baselines.hpp"

#include <cmath>
#include <limits>

#include "glfs/error.hpp"
#include "glfs/kernels/kernels.hpp"

namespace glfs {

Vector laplacian_score(const DataMatrix& x, const SimilarityGraph& s) {
  require(s.size() == x.samples(), ErrorCode::InvalidInput,
          "graph size does not match the sample count");
  const LaplacianOperator lap = laplacian(s);
  const Vector& deg = lap.degree;
  const double total = deg.sum();
  require(total > 0.0, ErrorCode::InvalidInput, "graph has no edges (zero total degree)");

  const Matrix& v = x.values();
  Vector scores(x.features());
  for (Index r = 0; r < x.features(); ++r) {
    const Vector f = v.row(r).transpose();
    const double mean = f.dot(deg) / total;
    const Vector centered = f.array() - mean;
    const double denom = centered.dot(deg.cwiseProduct(centered));
    if (!(denom > 0.0)) {
      scores[r] = std::numeric_limits<double>::infinity();
      continue;
    }
    const double numer = centered.dot(lap.laplacian * centered);
    scores[r] = numer / denom;
  }
  return scores;
}

namespace {

void check_greedy_args(const DataMatrix& x, const LaplacianOperator& l, double lambda1,
                       double lambda2) {
  require(l.laplacian.rows() == x.samples(), ErrorCode::InvalidInput,
          "Laplacian size does not match the sample count");
  require(lambda1 >= 0.0, ErrorCode::InvalidParameter, "lambda1 must be nonnegative");
  require(lambda2 > 0.0, ErrorCode::InvalidParameter, "lambda2 must be positive");
}

// W = X (I + λ1 L); Z entries are then H_ab = ⟨W_a, X_b⟩ (+ λ2 on the diagonal).
Matrix smoothed_rows(const DataMatrix& x, const LaplacianOperator& l, double lambda1) {
  Matrix w = lambda1 * (x.values() * l.laplacian);
  w += x.values();
  return w;
}

}  // namespace

double variance_criterion(const DataMatrix& x, const LaplacianOperator& l, double lambda1,
                          double lambda2, const std::vector<Index>& features,
                          VarianceCriterion criterion) {
  check_greedy_args(x, l, lambda1, lambda2);
  const DataMatrix sub = x.select_features(features);
  Matrix z = sub.values() * (Matrix::Identity(x.samples(), x.samples()) + lambda1 * l.laplacian) *
             sub.values().transpose();
  z.diagonal().array() += lambda2;
  const Matrix zs = 0.5 * (z + z.transpose());
  const Eigen::LLT<Matrix> llt(zs);
  require(llt.info() == Eigen::Success, ErrorCode::NumericalError, "Z is not positive definite");
  if (criterion == VarianceCriterion::Trace) {
    return llt.solve(Matrix::Identity(zs.rows(), zs.cols())).trace();
  }
  const Matrix lower = llt.matrixL();
  return 2.0 * lower.diagonal().array().log().sum();
}

std::vector<Index> greedy_variance_select(const DataMatrix& x, const LaplacianOperator& l,
                                          double lambda1, double lambda2, Index k,
                                          VarianceCriterion criterion,
                                          std::vector<double>* values) {
  check_greedy_args(x, l, lambda1, lambda2);
  const Index d = x.features();
  require(k >= 1 && k <= d, ErrorCode::InvalidParameter, "target count must satisfy 1 <= k <= d");

  const Matrix w = smoothed_rows(x, l, lambda1);
  const Matrix& v = x.values();
  const auto n = static_cast<std::size_t>(x.samples());
  // Row-major copies so that feature rows are contiguous for the dot kernel.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> wr = w;
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> vr = v;
  auto h = [&](Index a, Index b) {
    return kernels::dot({wr.row(a).data(), n}, {vr.row(b).data(), n});
  };

  Vector diag(d);
  for (Index j = 0; j < d; ++j) diag[j] = h(j, j) + lambda2;

  if (values) values->clear();
  std::vector<Index> selected;
  std::vector<bool> taken(static_cast<std::size_t>(d), false);
  Matrix zinv(0, 0);  // Z_𝒢^{-1}
  double trace_inv = 0.0;
  double logdet = 0.0;

  for (Index round = 0; round < k; ++round) {
    const auto m = static_cast<Index>(selected.size());
    Index best = -1;
    double best_value = 0.0;
    Vector best_u;
    double best_schur = 0.0;
    Vector b(m);
    for (Index j = 0; j < d; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      // Bordered update: Z' = [[Z, b], [bᵀ, c]], Schur complement s = c − bᵀZ^{-1}b.
      for (Index r = 0; r < m; ++r) b[r] = h(selected[static_cast<std::size_t>(r)], j);
      const Vector u = zinv * b;
      const double schur = diag[j] - b.dot(u);
      double value;
      if (!(schur > 0.0)) {
        value = criterion == VarianceCriterion::Trace ? std::numeric_limits<double>::infinity()
                                                      : -std::numeric_limits<double>::infinity();
      } else if (criterion == VarianceCriterion::Trace) {
        value = trace_inv + (1.0 + u.squaredNorm()) / schur;
      } else {
        value = logdet + std::log(schur);
      }
      const bool better = criterion == VarianceCriterion::Trace ? value < best_value
                                                                : value > best_value;
      if (best < 0 || better) {
        best = j;
        best_value = value;
        best_u = u;
        best_schur = schur;
      }
    }
    require(best >= 0 && best_schur > 0.0, ErrorCode::NumericalError,
            "greedy selection lost positive definiteness");

    // Z'^{-1} = [[Z^{-1} + u uᵀ/s, −u/s], [−uᵀ/s, 1/s]].
    Matrix next(m + 1, m + 1);
    next.topLeftCorner(m, m) = zinv + best_u * best_u.transpose() / best_schur;
    next.topRightCorner(m, 1) = -best_u / best_schur;
    next.bottomLeftCorner(1, m) = -best_u.transpose() / best_schur;
    next(m, m) = 1.0 / best_schur;
    zinv = std::move(next);
    if (criterion == VarianceCriterion::Trace) {
      trace_inv = best_value;
    } else {
      logdet = best_value;
    }
    selected.push_back(best);
    if (values) values->push_back(best_value);
    taken[static_cast<std::size_t>(best)] = true;
  }
  return selected;
}

}  // namespace glfs
