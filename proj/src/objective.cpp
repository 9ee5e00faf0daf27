#include "glfs/objective.hpp"

#include <cmath>
#include <vector>

#include "glfs/error.hpp"
#include "glfs/kernels/kernels.hpp"

namespace glfs {

namespace {

void check_shapes(const DataMatrix& x, const Vector& beta, const Matrix& m) {
  require(beta.size() == x.features(), ErrorCode::InvalidInput,
          "weight vector length does not match the feature count");
  require(m.rows() == x.samples() && m.cols() == x.samples(), ErrorCode::InvalidInput,
          "manifold kernel size does not match the sample count");
}

// Y = diag(√β) X restricted to the support of β.
Matrix scaled_support_rows(const Matrix& x, const Vector& beta) {
  Index count = 0;
  for (Index i = 0; i < beta.size(); ++i) count += beta[i] > 0.0 ? 1 : 0;
  Matrix y(count, x.cols());
  Index r = 0;
  for (Index i = 0; i < beta.size(); ++i) {
    if (beta[i] > 0.0) y.row(r++) = std::sqrt(beta[i]) * x.row(i);
  }
  return y;
}

// Yᵀ from the cached Xᵀ: column r is √β_i f_i for the r-th active feature.
Matrix scaled_support_columns(const Matrix& xt, const Vector& beta) {
  Index count = 0;
  for (Index i = 0; i < beta.size(); ++i) count += beta[i] > 0.0 ? 1 : 0;
  Matrix yt(xt.rows(), count);
  Index r = 0;
  for (Index i = 0; i < beta.size(); ++i) {
    if (beta[i] > 0.0) yt.col(r++) = std::sqrt(beta[i]) * xt.col(i);
  }
  return yt;
}

Eigen::LLT<Matrix> factor(const Matrix& spd) {
  Eigen::LLT<Matrix> llt(spd);
  require(llt.info() == Eigen::Success, ErrorCode::NumericalError,
          "M + A is not positive definite");
  return llt;
}

// Features are processed in column blocks of Xᵀ so the n×block working set
// stays in cache; one full n×d temporary would not once d reaches a few
// thousand.
constexpr Index kBlock = 256;

// out_i = f_iᵀ K f_i for every row f_i of X, with xt = Xᵀ.
Vector quadratic_forms(const Matrix& xt, const Matrix& kernel) {
  const Index n = xt.rows(), d = xt.cols();
  Vector out(d);
  Matrix kx(n, std::min(kBlock, d));
  for (Index start = 0; start < d; start += kBlock) {
    const Index len = std::min(kBlock, d - start);
    kx.leftCols(len).noalias() = kernel * xt.middleCols(start, len);
    kernels::column_dots(xt.col(start).data(), kx.data(), static_cast<std::size_t>(n),
                         static_cast<std::size_t>(len), out.data() + start);
  }
  return out;
}

// A = Σ β_i f_i f_iᵀ over the support, accumulated block by block.
Matrix support_gram(const Matrix& xt, const Vector& beta) {
  const Index n = xt.rows();
  Matrix a = Matrix::Zero(n, n);
  Matrix block(n, kBlock);
  Index filled = 0;
  auto flush = [&] {
    if (filled == 0) return;
    a.selfadjointView<Eigen::Lower>().rankUpdate(block.leftCols(filled));
    filled = 0;
  };
  for (Index i = 0; i < beta.size(); ++i) {
    if (!(beta[i] > 0.0)) continue;
    block.col(filled++) = std::sqrt(beta[i]) * xt.col(i);
    if (filled == kBlock) flush();
  }
  flush();
  a.triangularView<Eigen::StrictlyUpper>() = a.transpose();
  return a;
}

// u = L^{-1} for the Cholesky factor S = L Lᵀ, reading only the lower triangle
// of s. The 2×2 block recursion keeps nearly all flops in gemm; at n ≈ 100
// that is about twice as fast as LLT followed by a triangular solve.
void cholesky_inverse(const Eigen::Ref<const Matrix>& s, Eigen::Ref<Matrix> u) {
  constexpr Index kLeaf = 16;
  const Index n = s.rows();
  if (n <= kLeaf) {
    const Eigen::LLT<Matrix> llt(s);
    require(llt.info() == Eigen::Success, ErrorCode::NumericalError,
            "M + A is not positive definite");
    u.setIdentity();
    llt.matrixL().solveInPlace(u);
    return;
  }
  const Index h = n / 2, r = n - h;
  cholesky_inverse(s.topLeftCorner(h, h), u.topLeftCorner(h, h));
  u.topRightCorner(h, r).setZero();
  Matrix l21;
  l21.noalias() = s.bottomLeftCorner(r, h) * u.topLeftCorner(h, h).transpose();
  Matrix s22 = s.bottomRightCorner(r, r);
  s22.noalias() -= l21 * l21.transpose();  // Schur complement
  cholesky_inverse(s22, u.bottomRightCorner(r, r));
  const Matrix tmp = l21 * u.topLeftCorner(h, h);
  u.bottomLeftCorner(r, h).noalias() = -u.bottomRightCorner(r, r) * tmp;
}

// S^{-1} R for symmetric positive definite S, via S^{-1} = L^{-T} L^{-1}.
Matrix spd_solve(const Matrix& spd, const Matrix& rhs) {
  Matrix u(spd.rows(), spd.cols());
  cholesky_inverse(spd, u);
  const Matrix w = u * rhs;
  Matrix out;
  out.noalias() = u.transpose() * w;
  return out;
}

}  // namespace

Matrix weighted_gram(const DataMatrix& x, const FeatureWeights& beta) {
  require(beta.size() == x.features(), ErrorCode::InvalidInput,
          "weight vector length does not match the feature count");
  const Matrix y = scaled_support_rows(x.values(), beta.values());
  const Index n = x.samples();
  Matrix a = Matrix::Zero(n, n);
  a.selfadjointView<Eigen::Lower>().rankUpdate(y.transpose());
  return a.selfadjointView<Eigen::Lower>();
}

CovarianceObjective::CovarianceObjective(const DataMatrix& x, const ManifoldKernel& m)
    : x_(x.values()), m_(m.m), precision_(m.precision), lambda2_(m.lambda2),
      xt_(x.values().transpose()) {
  require(m_.rows() == x_.cols() && m_.cols() == x_.cols(), ErrorCode::InvalidInput,
          "manifold kernel size does not match the sample count");
}

CovarianceObjective::Evaluation CovarianceObjective::evaluate(const Vector& beta,
                                                             bool with_gradient) const {
  require(beta.size() == x_.rows(), ErrorCode::InvalidInput,
          "weight vector length does not match the feature count");
  const Index n = x_.cols();
  Evaluation out;
  Index support = 0;
  for (Index i = 0; i < beta.size(); ++i) support += beta[i] > 0.0 ? 1 : 0;
  if (support == 0) {
    // A = 0: B = I, Q = 0 and the gradient kernel is the identity.
    out.value = 0.0;
    if (with_gradient) out.gradient = xt_.colwise().squaredNorm().transpose();
    return out;
  }

  const Matrix a = support_gram(xt_, beta);
  const Matrix b = spd_solve(a + m_, m_);  // B = (M + A)^{-1} M

  // ∂Q/∂β_i = f_iᵀ (PMPM − PMPM·A·P − PM·A·PM·P) f_i. With A·P = I − M·P the
  // bracket reduces to 2·B·B·Bᵀ − B·Bᵀ = T·Bᵀ with T = B(2B − I), and
  // B·B = (T + B)/2 then gives the trace for free.
  Matrix t;
  if (with_gradient) {
    Matrix c = 2.0 * b;
    c.diagonal().array() -= 1.0;
    t.noalias() = b * c;
  }

  if (support < n && precision_.rows() == n) {
    // Same trace in feature space: Q = λ2² Tr(Z^{-1} Y Yᵀ Z^{-1}). Avoids the
    // cancellation in B when A is rank deficient.
    const Matrix yt = scaled_support_columns(xt_, beta);
    Matrix z = yt.transpose() * precision_.selfadjointView<Eigen::Lower>() * yt;
    z.diagonal().array() += lambda2_;
    const Matrix w = factor(z).solve(yt.transpose());
    out.value = lambda2_ * lambda2_ * w.squaredNorm();
  } else if (with_gradient) {
    // Q = Tr(A·B·B), A symmetric.
    out.value = 0.5 * (a.cwiseProduct(t + b)).sum();
  } else {
    out.value = (a * b).cwiseProduct(b.transpose()).sum();
  }

  if (with_gradient) {
    Matrix kernel;
    kernel.noalias() = t * b.transpose();
    out.gradient = quadratic_forms(xt_, kernel);
  }
  if (!std::isfinite(out.value)) {
    fail(ErrorCode::NumericalError, "objective is not finite");
  }
  return out;
}

double objective_exact(const DataMatrix& x, const FeatureWeights& beta, const ManifoldKernel& m) {
  check_shapes(x, beta.values(), m.m);
  return CovarianceObjective(x, m).value(beta.values());
}

Vector gradient_exact(const DataMatrix& x, const FeatureWeights& beta, const ManifoldKernel& m) {
  check_shapes(x, beta.values(), m.m);
  return CovarianceObjective(x, m).evaluate(beta.values(), true).gradient;
}

double objective_commuting(const DataMatrix& x, const FeatureWeights& beta, const ManifoldKernel& m) {
  check_shapes(x, beta.values(), m.m);
  const Matrix a = weighted_gram(x, beta);
  const Eigen::LLT<Matrix> llt = factor(m.m + a);
  // (M+A)^{-2} M²
  const Matrix p2m2 = llt.solve(llt.solve(m.m * m.m));
  return a.cwiseProduct(p2m2.transpose()).sum();
}

Vector gradient_commuting(const DataMatrix& x, const FeatureWeights& beta, const ManifoldKernel& m) {
  check_shapes(x, beta.values(), m.m);
  const Matrix a = weighted_gram(x, beta);
  const Eigen::LLT<Matrix> llt = factor(m.m + a);
  const Matrix p3m2 = llt.solve(llt.solve(llt.solve(m.m * m.m)));
  const Matrix kernel = (m.m - a) * p3m2;
  return quadratic_forms(x.values().transpose(), kernel);
}

double covariance_trace_oracle(const DataMatrix& x, const FeatureWeights& beta, double lambda1,
                               double lambda2, const LaplacianOperator& l, double sigma) {
  require(beta.size() == x.features(), ErrorCode::InvalidInput,
          "weight vector length does not match the feature count");
  require(lambda2 > 0.0, ErrorCode::InvalidParameter, "lambda2 must be positive");
  const Index d = x.features();
  Matrix xg = x.values();
  for (Index i = 0; i < d; ++i) xg.row(i) *= std::sqrt(beta[i]);
  const Matrix gram = xg * xg.transpose();
  Matrix z = gram + lambda1 * (xg * l.laplacian * xg.transpose());
  z.diagonal().array() += lambda2;
  const Matrix zsym = 0.5 * (z + z.transpose());
  const Eigen::LDLT<Matrix> ldlt(zsym);
  require(ldlt.info() == Eigen::Success, ErrorCode::NumericalError, "Z is singular");
  const Matrix zinv = ldlt.solve(Matrix::Identity(d, d));
  return sigma * sigma * (zinv * gram * zinv).trace();
}

double penalized_objective(const DataMatrix& x, const FeatureWeights& beta,
                           const ManifoldKernel& m, double lambda) {
  require(lambda >= 0.0, ErrorCode::InvalidParameter, "penalty must be nonnegative");
  return objective_exact(x, beta, m) + lambda * beta.l1_norm();
}

}  // namespace glfs
