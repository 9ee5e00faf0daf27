#pragma once

#include "glfs/graph.hpp"
#include "glfs/types.hpp"

namespace glfs {

/// A = Xᵀ diag(β) X, formed as YᵀY with Y = diag(√β) X so it is PSD by
/// construction. Throws invalid-input if β has the wrong length.
Matrix weighted_gram(const DataMatrix& x, const FeatureWeights& beta);

/// Q = Tr(A · (M+A)^{-1} M · (M+A)^{-1} M): the covariance trace of the
/// Laplacian-regularised least-squares coefficients, up to the factor σ²/λ2².
double objective_exact(const DataMatrix& x, const FeatureWeights& beta, const ManifoldKernel& m);

/// Tr(A (M+A)^{-2} M²). Equal to objective_exact only when M commutes with
/// A (e.g. λ1 = 0); kept as a diagnostic.
double objective_commuting(const DataMatrix& x, const FeatureWeights& beta, const ManifoldKernel& m);

/// ∂Q/∂β_i = f_iᵀ G f_i for the exact objective.
Vector gradient_exact(const DataMatrix& x, const FeatureWeights& beta, const ManifoldKernel& m);

/// f_iᵀ (M − A)(M+A)^{-3} M² f_i. Diagnostic; matches gradient_exact only in
/// the commuting case.
Vector gradient_commuting(const DataMatrix& x, const FeatureWeights& beta, const ManifoldKernel& m);

/// Tr(Cov(w)) computed directly in feature space:
///   X^𝒢 = diag(√β) X,  Z = X^𝒢 (I + λ1 L) (X^𝒢)ᵀ + λ2 I,
///   σ² Tr(Z^{-1} X^𝒢 (X^𝒢)ᵀ Z^{-1}).
/// Independent of the (M + A) route; used to validate it.
double covariance_trace_oracle(const DataMatrix& x, const FeatureWeights& beta, double lambda1,
                               double lambda2, const LaplacianOperator& l, double sigma);

/// Q_exact + λ Σ β_i.
double penalized_objective(const DataMatrix& x, const FeatureWeights& beta,
                           const ManifoldKernel& m, double lambda);

/// Evaluation context for repeated objective/gradient calls on fixed X, M.
/// Caches Xᵀ so the quadratic-form pass reads contiguous columns. When fewer
/// than n features are active the value is computed in feature space,
/// Q = λ2² ‖Z^{-1} Y‖² with Z = Y (I + λ1 L) Yᵀ + λ2 I, which avoids the
/// cancellation Y·(M+A)^{-1}M suffers when A is rank deficient.
class CovarianceObjective {
 public:
  CovarianceObjective(const DataMatrix& x, const ManifoldKernel& m);

  struct Evaluation {
    double value = 0.0;
    Vector gradient;  // empty unless requested
  };

  /// β is taken as a raw vector; callers guarantee β ≥ 0.
  Evaluation evaluate(const Vector& beta, bool with_gradient) const;
  double value(const Vector& beta) const { return evaluate(beta, false).value; }

  Index features() const noexcept { return x_.rows(); }
  Index samples() const noexcept { return x_.cols(); }

 private:
  const Matrix& x_;
  const Matrix& m_;
  const Matrix& precision_;
  double lambda2_;
  Matrix xt_;
};

}  // namespace glfs
