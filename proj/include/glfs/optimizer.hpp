#pragma once

#include <functional>
#include <vector>

#include "glfs/graph.hpp"
#include "glfs/objective.hpp"
#include "glfs/types.hpp"

namespace glfs {

struct OptimizerConfig {
  int lbfgs_memory = 10;
  int max_iter = 500;
  double tol_obj = 1e-8;   // relative change of the penalized objective
  double tol_grad = 1e-6;  // projected-gradient ∞-norm, relative to its value at β0
  double backtrack_shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_backtracks = 50;
  double zero_threshold = 1e-10;

  /// Throws invalid-parameter on any out-of-range field.
  void validate() const;
};

struct PenaltySchedule {
  double lambda0 = 1e-4;
  double c = 1024.0;

  /// ⌊log₂ C⌋
  int max_steps() const;
  void validate() const;
};

struct SolveResult {
  FeatureWeights beta;
  double objective_value = 0.0;  // penalized
  int iterations = 0;
  bool converged = false;
  Index support_size = 0;
};

struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;
  Index support_size = 0;
  double step_size = 0.0;
};

using IterationObserver = std::function<void(const IterationRecord&)>;

/// P_S: keeps step_i where step_i and gradient_i have the same (nonzero)
/// sign, zero elsewhere. The step is the one that gets subtracted.
Vector project_sign_alignment(const Vector& step, const Vector& gradient);

/// P_O onto the nonnegative orthant: negatives become 0, entries below
/// zero_threshold are snapped to exactly 0. `reference` fixes the length.
FeatureWeights project_orthant(const Vector& candidate, const FeatureWeights& reference,
                               double zero_threshold = 1e-10);

/// Projected gradient of Q + λΣβ on β ≥ 0: components sitting at zero with a
/// positive gradient are masked out.
Vector projected_gradient(const Vector& beta, const Vector& smooth_gradient, double lambda);

/// Orthant-wise limited-memory quasi-Newton descent on Q_exact + λΣβ, β ≥ 0.
/// Accepted steps never increase the penalized objective. Throws
/// NumericalFailure (with the last finite iterate) if evaluation breaks down.
SolveResult owd_minimize(const CovarianceObjective& objective, double lambda,
                         const FeatureWeights& beta0, const OptimizerConfig& config = {},
                         const IterationObserver& observer = {});

SolveResult owd_minimize(const DataMatrix& x, const ManifoldKernel& m, double lambda,
                         const FeatureWeights& beta0, const OptimizerConfig& config = {},
                         const IterationObserver& observer = {});

struct PenaltyProbe {
  double lambda = 0.0;
  Index support_size = 0;
};

struct LineSearchResult {
  double lambda = 0.0;
  SolveResult solution;
  std::vector<PenaltyProbe> history;
  bool early_stopped = false;
};

/// Solves the problem for one penalty value.
using PenaltySolver = std::function<SolveResult(double lambda)>;

/// Penalty schedule: t = 0..⌊log₂C⌋, λ_{t+1} = λ_t/2 after an all-zero
/// solution, (C/2^t)·λ_t otherwise. Stops early on zero → nonzero → zero and
/// returns the middle solution; otherwise returns the nonzero solution with
/// the smallest support (ties: larger λ). Throws empty-selection if every
/// probe came back zero.
LineSearchResult lambda_line_search(const PenaltySolver& solve, const PenaltySchedule& schedule);

/// The same schedule with owd_minimize from β0 = 1 as the solver.
LineSearchResult lambda_line_search(const DataMatrix& x, const ManifoldKernel& m,
                                    const OptimizerConfig& config,
                                    const PenaltySchedule& schedule,
                                    const IterationObserver& observer = {});

}  // namespace glfs
