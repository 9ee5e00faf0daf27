#include "glfs/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "glfs/error.hpp"

namespace glfs {

void OptimizerConfig::validate() const {
  require(lbfgs_memory >= 1, ErrorCode::InvalidParameter, "lbfgs memory must be >= 1");
  require(max_iter >= 1, ErrorCode::InvalidParameter, "max_iter must be >= 1");
  require(tol_obj > 0.0 && tol_grad > 0.0, ErrorCode::InvalidParameter,
          "tolerances must be positive");
  require(backtrack_shrink > 0.0 && backtrack_shrink < 1.0, ErrorCode::InvalidParameter,
          "backtrack shrink must lie in (0, 1)");
  require(sufficient_decrease > 0.0 && sufficient_decrease < 1.0, ErrorCode::InvalidParameter,
          "sufficient decrease constant must lie in (0, 1)");
  require(max_backtracks >= 1, ErrorCode::InvalidParameter, "max_backtracks must be >= 1");
  require(zero_threshold > 0.0, ErrorCode::InvalidParameter, "zero threshold must be positive");
}

int PenaltySchedule::max_steps() const {
  validate();
  int steps = 0;
  double power = 2.0;
  while (power <= c) {
    ++steps;
    power *= 2.0;
  }
  return steps;
}

void PenaltySchedule::validate() const {
  require(lambda0 > 0.0 && std::isfinite(lambda0), ErrorCode::InvalidParameter,
          "lambda0 must be positive");
  require(c > 1.0 && std::isfinite(c), ErrorCode::InvalidParameter, "C must exceed 1");
}

Vector project_sign_alignment(const Vector& step, const Vector& gradient) {
  require(step.size() == gradient.size(), ErrorCode::InvalidInput,
          "step and gradient lengths differ");
  Vector out(step.size());
  for (Index i = 0; i < step.size(); ++i) {
    out[i] = step[i] * gradient[i] > 0.0 ? step[i] : 0.0;
  }
  return out;
}

FeatureWeights project_orthant(const Vector& candidate, const FeatureWeights& reference,
                               double zero_threshold) {
  require(candidate.size() == reference.size(), ErrorCode::InvalidInput,
          "candidate and reference lengths differ");
  Vector out(candidate.size());
  for (Index i = 0; i < candidate.size(); ++i) {
    const double v = candidate[i];
    out[i] = (v < zero_threshold || !(v > 0.0)) ? 0.0 : v;
  }
  return FeatureWeights(std::move(out));
}

Vector projected_gradient(const Vector& beta, const Vector& smooth_gradient, double lambda) {
  Vector pg(beta.size());
  for (Index i = 0; i < beta.size(); ++i) {
    const double g = smooth_gradient[i] + lambda;
    pg[i] = beta[i] > 0.0 ? g : std::min(g, 0.0);
  }
  return pg;
}

namespace {

struct CurvaturePair {
  Vector s;
  Vector y;
  double rho;
};

// H·v by the L-BFGS two-loop recursion. With no stored pairs the step is
// scaled so that no coordinate moves by more than one unit.
Vector apply_inverse_hessian(const std::deque<CurvaturePair>& memory, const Vector& v) {
  if (memory.empty()) {
    const double norm = v.lpNorm<Eigen::Infinity>();
    return norm > 0.0 ? Vector(v / norm) : v;
  }
  Vector q = v;
  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    alpha[k] = memory[k].rho * memory[k].s.dot(q);
    q -= alpha[k] * memory[k].y;
  }
  const CurvaturePair& last = memory.back();
  q *= last.s.dot(last.y) / last.y.squaredNorm();
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const double b = memory[k].rho * memory[k].y.dot(q);
    q += (alpha[k] - b) * memory[k].s;
  }
  return q;
}

CovarianceObjective::Evaluation checked_evaluate(const CovarianceObjective& objective,
                                                 const Vector& beta,
                                                 const Vector& last_good) {
  CovarianceObjective::Evaluation e;
  try {
    e = objective.evaluate(beta, true);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NumericalError) throw;
    throw NumericalFailure(err.what(), {last_good.data(), last_good.data() + last_good.size()});
  }
  if (!std::isfinite(e.value) || !e.gradient.allFinite()) {
    throw NumericalFailure("objective or gradient is not finite",
                           {last_good.data(), last_good.data() + last_good.size()});
  }
  return e;
}

}  // namespace

SolveResult owd_minimize(const CovarianceObjective& objective, double lambda,
                         const FeatureWeights& beta0, const OptimizerConfig& config,
                         const IterationObserver& observer) {
  config.validate();
  require(lambda >= 0.0 && std::isfinite(lambda), ErrorCode::InvalidParameter,
          "penalty must be nonnegative");
  require(beta0.size() == objective.features(), ErrorCode::InvalidInput,
          "initial weights have the wrong length");

  Vector beta = beta0.values();
  auto eval = checked_evaluate(objective, beta, beta);
  double f = eval.value + lambda * beta.sum();
  Vector pg = projected_gradient(beta, eval.gradient, lambda);
  const double grad_tol = config.tol_grad * pg.lpNorm<Eigen::Infinity>();

  std::deque<CurvaturePair> memory;
  SolveResult result;
  int iter = 0;
  for (; iter < config.max_iter; ++iter) {
    if (pg.lpNorm<Eigen::Infinity>() <= grad_tol) {
      result.converged = true;
      break;
    }
    Vector step = project_sign_alignment(apply_inverse_hessian(memory, pg), pg);
    if (step.isZero(0.0)) {
      // The quasi-Newton direction disagrees everywhere; restart from the
      // scaled projected gradient.
      memory.clear();
      step = apply_inverse_hessian(memory, pg);
    }

    double alpha = 1.0;
    bool accepted = false;
    Vector candidate;
    CovarianceObjective::Evaluation trial;
    double f_trial = 0.0;
    for (int bt = 0; bt < config.max_backtracks; ++bt) {
      candidate = project_orthant(beta - alpha * step, beta0, config.zero_threshold).values();
      trial = checked_evaluate(objective, candidate, beta);
      f_trial = trial.value + lambda * candidate.sum();
      if (f_trial <= f + config.sufficient_decrease * pg.dot(candidate - beta)) {
        accepted = true;
        break;
      }
      alpha *= config.backtrack_shrink;
    }
    if (!accepted) {
      if (!memory.empty()) {
        memory.clear();
        continue;
      }
      // No decrease along the scaled projected gradient: β is stationary to
      // working precision.
      result.converged = pg.lpNorm<Eigen::Infinity>() <= grad_tol;
      break;
    }

    Vector s = candidate - beta;
    Vector y = trial.gradient - eval.gradient;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.squaredNorm() && sy > 0.0) {
      memory.push_back({std::move(s), std::move(y), 1.0 / sy});
      if (static_cast<int>(memory.size()) > config.lbfgs_memory) memory.pop_front();
    }

    const double change = std::abs(f - f_trial) / std::max(std::abs(f), std::numeric_limits<double>::min());
    beta = std::move(candidate);
    eval = std::move(trial);
    f = f_trial;
    pg = projected_gradient(beta, eval.gradient, lambda);

    if (observer) {
      observer({iter + 1, f, (beta.array() > 0.0).count(), alpha});
    }
    if (change < config.tol_obj) {
      ++iter;
      result.converged = true;
      break;
    }
  }

  result.beta = FeatureWeights(std::move(beta));
  result.objective_value = f;
  result.iterations = iter;
  result.support_size = result.beta.support_size();
  return result;
}

SolveResult owd_minimize(const DataMatrix& x, const ManifoldKernel& m, double lambda,
                         const FeatureWeights& beta0, const OptimizerConfig& config,
                         const IterationObserver& observer) {
  const CovarianceObjective objective(x, m);
  return owd_minimize(objective, lambda, beta0, config, observer);
}

LineSearchResult lambda_line_search(const PenaltySolver& solve, const PenaltySchedule& schedule) {
  const int t_max = schedule.max_steps();
  LineSearchResult out;
  std::vector<SolveResult> solutions;
  double lambda = schedule.lambda0;
  for (int t = 0; t <= t_max; ++t) {
    SolveResult r = solve(lambda);
    const bool zero = r.support_size == 0;
    out.history.push_back({lambda, r.support_size});
    solutions.push_back(std::move(r));

    const std::size_t k = out.history.size();
    if (k >= 3 && out.history[k - 1].support_size == 0 && out.history[k - 2].support_size > 0 &&
        out.history[k - 3].support_size == 0) {
      out.lambda = out.history[k - 2].lambda;
      out.solution = std::move(solutions[k - 2]);
      out.early_stopped = true;
      return out;
    }
    lambda = zero ? 0.5 * lambda : lambda * schedule.c / std::ldexp(1.0, t);
  }

  std::size_t best = solutions.size();
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (solutions[i].support_size == 0) continue;
    if (best == solutions.size() || solutions[i].support_size < solutions[best].support_size ||
        (solutions[i].support_size == solutions[best].support_size &&
         out.history[i].lambda > out.history[best].lambda)) {
      best = i;
    }
  }
  require(best < solutions.size(), ErrorCode::EmptySelection,
          "every penalty in the schedule selected no features; try a smaller lambda0");
  out.lambda = out.history[best].lambda;
  out.solution = std::move(solutions[best]);
  return out;
}

LineSearchResult lambda_line_search(const DataMatrix& x, const ManifoldKernel& m,
                                    const OptimizerConfig& config,
                                    const PenaltySchedule& schedule,
                                    const IterationObserver& observer) {
  const CovarianceObjective objective(x, m);
  const FeatureWeights start = FeatureWeights::ones(x.features());
  return lambda_line_search(
      [&](double lambda) { return owd_minimize(objective, lambda, start, config, observer); },
      schedule);
}

}  // namespace glfs
