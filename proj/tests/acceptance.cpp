// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "glfs/baselines.hpp"
#include "glfs/classifier.hpp"
#include "glfs/clustering.hpp"
#include "glfs/io.hpp"
#include "glfs/metrics.hpp"
#include "glfs/objective.hpp"
#include "glfs/select.hpp"
#include "glfs/simulate.hpp"
#include "support.hpp"

using namespace glfs;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v) { return io::format_number(v); }

constexpr std::uint64_t kInstanceSeed = 20240;  // instances kInstanceSeed + 0..49
constexpr int kInstances = 50;

// ---------------------------------------------------------------------------

Outcome oracle_chain() {
  double worst = 0.0;
  const auto start = Clock::now();
  for (int i = 0; i < kInstances; ++i) {
    const testing::Instance inst = testing::random_instance(kInstanceSeed + i);
    const FeatureWeights beta(inst.beta);
    const double q = objective_exact(inst.x, beta, inst.m);
    const double oracle =
        covariance_trace_oracle(inst.x, beta, inst.lambda1, inst.lambda2, inst.l, 1.0);
    worst = std::max(worst, testing::rel_err(q, inst.lambda2 * inst.lambda2 * oracle));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {worst < 1e-8 && secs < 10.0,
          "seeds " + std::to_string(kInstanceSeed) + ".." + std::to_string(kInstanceSeed + kInstances - 1) +
              ", max rel err " + fmt(worst) + " < 1e-8"};
}

Outcome gradient_checks() {
  double worst_fd = 0.0, worst_commuting = 0.0, worst_zero = 0.0;
  int commuting = 0;
  const double h = 1e-5;
  for (int i = 0; i < kInstances; ++i) {
    const testing::Instance inst = testing::random_instance(kInstanceSeed + i);
    const FeatureWeights beta(inst.beta);
    const Vector g = gradient_exact(inst.x, beta, inst.m);
    for (Index j = 0; j < g.size(); ++j) {
      Vector up = inst.beta, down = inst.beta;
      up[j] += h;
      down[j] -= h;
      const double fd = (objective_exact(inst.x, FeatureWeights(up), inst.m) -
                         objective_exact(inst.x, FeatureWeights(down), inst.m)) /
                        (2.0 * h);
      worst_fd = std::max(worst_fd, testing::rel_err(fd, g[j]));
    }
    if (inst.lambda1 == 0.0) {
      ++commuting;
      const Vector gp = gradient_commuting(inst.x, beta, inst.m);
      worst_commuting = std::max(worst_commuting, (gp - g).lpNorm<Eigen::Infinity>() /
                                                      std::max(1.0, g.lpNorm<Eigen::Infinity>()));
    }
    const FeatureWeights zero = FeatureWeights::zeros(inst.x.features());
    const Vector norms = inst.x.values().rowwise().squaredNorm();
    const double scale = std::max(1.0, norms.lpNorm<Eigen::Infinity>());
    worst_zero = std::max(worst_zero, (gradient_exact(inst.x, zero, inst.m) - norms).lpNorm<Eigen::Infinity>() / scale);
    worst_zero = std::max(worst_zero, (gradient_commuting(inst.x, zero, inst.m) - norms).lpNorm<Eigen::Infinity>() / scale);
  }
  return {worst_fd < 1e-5 && worst_commuting <= 1e-10 && worst_zero <= 1e-10,
          "FD max rel err " + fmt(worst_fd) + " < 1e-5; commuting form vs exact at lambda1=0 (" +
              std::to_string(commuting) + " instances) " + fmt(worst_commuting) +
              " <= 1e-10; beta=0 vs row norms " + fmt(worst_zero) + " <= 1e-10"};
}

GlfsOptions simulation_options() {
  // λ2 is raised to 100 for the desk-scale simulation; see README.
  GlfsOptions opt;
  opt.lambda1 = 0.1;
  opt.lambda2 = 100.0;
  return opt;
}

Outcome simulation_recovery() {
  const GlfsOptions opt = simulation_options();
  int perfect = 0;
  std::ostringstream misses;
  double glfs_sum = 0.0, ls_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimulationConfig cfg;
    cfg.noise_sigma = 0.2;
    const LabeledDataset data = simulate(cfg, seed);
    const GlfsSelection sel = glfs_select(data.x, opt);
    const double score = ranking_score(sel.search.solution.beta.values(), data.true_feature_ids);
    if (score == 1.0) {
      ++perfect;
    } else {
      misses << " seed " << seed << "=" << fmt(score);
    }

    cfg.noise_sigma = 0.3;
    const LabeledDataset noisy = simulate(cfg, seed);
    const GlfsSelection sel3 = glfs_select(noisy.x, opt);
    glfs_sum += ranking_score(sel3.search.solution.beta.values(), noisy.true_feature_ids);
    const GlfsProblem problem = build_problem(noisy.x, opt);
    // Lower Laplacian Score is better, so rank by its negation.
    const Vector ls = -laplacian_score(noisy.x, problem.graph);
    ls_sum += ranking_score(ls, noisy.true_feature_ids);
  }
  const double glfs_mean = glfs_sum / 20.0, ls_mean = ls_sum / 20.0;
  return {perfect >= 18 && glfs_mean >= ls_mean,
          "seeds 1..20; sigma=0.2 perfect " + std::to_string(perfect) + "/20 (need 18)" + misses.str() +
              "; sigma=0.3 mean Score GLFS " + fmt(glfs_mean) + " vs Laplacian Score " + fmt(ls_mean)};
}

Outcome sparsity_curve() {
  SimulationConfig cfg;
  cfg.noise_sigma = 0.5;
  const std::uint64_t seed = 5;
  const LabeledDataset data = simulate(cfg, seed);
  GlfsOptions opt = simulation_options();
  const GlfsProblem problem = build_problem(data.x, opt);
  const CovarianceObjective objective(data.x, problem.kernel);
  const FeatureWeights start = FeatureWeights::ones(data.x.features());
  std::vector<double> lambdas, support;
  const double lo = 0.1, hi = 20.0;
  std::string curve;
  for (int i = 0; i < 10; ++i) {
    const double lambda = lo * std::pow(hi / lo, i / 9.0);
    const SolveResult r = owd_minimize(objective, lambda, start, opt.optimizer);
    lambdas.push_back(lambda);
    support.push_back(static_cast<double>(r.support_size));
    curve += (i ? "," : "") + std::to_string(r.support_size);
  }
  const double rho = spearman(lambdas, support);
  return {rho <= -0.8 && support.back() <= 10.0,
          "seed " + std::to_string(seed) + ", sigma=0.5, lambda in [0.1, 20] log grid; supports " + curve +
              "; Spearman " + fmt(rho) + " <= -0.8; last support " + fmt(support.back()) + " <= 10"};
}

Outcome clustering_sanity() {
  int good = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const LabeledDataset data = simulate(SimulationConfig{}, seed);
    const Matrix xs = data.x.select_features(data.true_feature_ids).values();
    const double v = nmi(kmeans(xs, 4, 10, seed).labels, data.labels);
    worst = std::min(worst, v);
    if (v >= 0.9) ++good;
  }
  const bool axioms = nmi({0, 0, 1, 1}, {0, 0, 1, 1}) == 1.0 && nmi({0, 0, 1, 1}, {1, 1, 0, 0}) == 1.0 &&
                      nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == 0.0;
  return {good >= 18 && axioms, "seeds 1..20; NMI >= 0.9 on " + std::to_string(good) +
                                    "/20 (min " + fmt(worst) + "); axioms " + (axioms ? "exact" : "violated")};
}

Outcome classifier_equivalence() {
  Rng rng = make_rng(606, 0);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const Index g = 2 + rep % 6, n = 5 + rep % 9;
    const Matrix x = testing::gaussian(g, n, rng);
    Vector y(n);
    for (Index j = 0; j < n; ++j) y[j] = static_cast<double>((j * 7 + rep) % 2);
    const Matrix lap = laplacian(testing::random_affinity(n, rng)).laplacian;
    const double lambda2 = 0.01 * (rep + 1);
    const Matrix test = testing::gaussian(g, 3, rng);
    const Matrix gram = x.transpose() * x + lambda2 * Matrix::Identity(n, n);
    const Vector ridge = test.transpose() * (x * gram.ldlt().solve(y));
    const Vector got = laprls_response(laprls_fit(x, y, 0.0, lambda2, lap), test);
    worst = std::max(worst, (got - ridge).lpNorm<Eigen::Infinity>());
  }

  // Separable two-blob data with a few noise features.
  Rng blob = make_rng(607, 0);
  const Index per = 20;
  Matrix x = testing::gaussian(6, 2 * per, blob, 0.3);
  std::vector<int> labels;
  for (Index j = 0; j < 2 * per; ++j) {
    const int c = j < per ? 0 : 1;
    x(c, j) += 3.0;  // no intercept: classes differ in direction
    labels.push_back(c);
  }
  SelectionSettings settings;
  settings.lambda2 = 1.0;
  std::vector<double> grid;
  for (int t = 0; t <= 10; ++t) grid.push_back(std::ldexp(1e-4, t));
  const CvResult cv = kfold_cv(DataMatrix(x), labels, 10, grid, 7, settings);
  return {worst <= 1e-8 && cv.best_errors == 0,
          "20 ridge instances (seed 606) max |diff| " + fmt(worst) + " <= 1e-8; two-blob 10-fold CV (seed 7) best " +
              std::to_string(cv.best_errors) + " errors at lambda " + fmt(cv.best_lambda)};
}

Outcome complexity() {
  Rng rng = make_rng(808, 0);
  const Index n = 100;
  const std::vector<Index> dims = {1000, 2000, 4000};
  struct Case {
    std::unique_ptr<DataMatrix> x;
    ManifoldKernel m;
    std::unique_ptr<CovarianceObjective> objective;
    Vector beta;
    double best = 1e300;
  };
  std::vector<Case> cases(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    Case& c = cases[k];
    c.x = std::make_unique<DataMatrix>(testing::gaussian(dims[k], n, rng));
    c.m = manifold_kernel(laplacian(build_knn_heat_graph(*c.x)), 0.1, 1.0);
    c.objective = std::make_unique<CovarianceObjective>(*c.x, c.m);
    c.beta = testing::uniform_vector(dims[k], rng, 0.1, 1.0);
  }
  // Sizes are interleaved within each round so a slow stretch of the machine
  // hits all of them; the per-size minimum over rounds is kept.
  double sink = 0.0;
  for (int round = 0; round < 150; ++round) {
    for (Case& c : cases) {
      const int calls = 4;
      const auto t0 = Clock::now();
      for (int i = 0; i < calls; ++i) sink += c.objective->evaluate(c.beta, true).gradient[0];
      c.best = std::min(c.best, std::chrono::duration<double>(Clock::now() - t0).count() / calls);
    }
  }
  if (!std::isfinite(sink)) return {false, "non-finite gradient"};
  std::vector<double> logd, logt;
  std::string times;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    logd.push_back(std::log(static_cast<double>(dims[k])));
    logt.push_back(std::log(cases[k].best));
    times += (times.empty() ? "" : ", ") + std::string("d=") + std::to_string(dims[k]) + " " +
             fmt(cases[k].best * 1e3) + " ms";
  }
  const double md = std::accumulate(logd.begin(), logd.end(), 0.0) / 3.0;
  const double mt = std::accumulate(logt.begin(), logt.end(), 0.0) / 3.0;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (logd[i] - md) * (logt[i] - mt);
    den += (logd[i] - md) * (logd[i] - md);
  }
  const double slope = num / den;
  return {slope >= 0.8 && slope <= 1.3,
          "n=100, per-gradient " + times + "; log-log slope " + fmt(slope) + " in [0.8, 1.3]"};
}

int shell(const std::string& command) { return std::system(command.c_str()); }

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

// Runs every subcommand into `dir` and returns the exit statuses.
std::vector<int> cli_round(const fs::path& dir) {
  const std::string cli = quote(GLFS_CLI_PATH);
  const std::string seed = " --seed 11";
  auto in = [&](const std::string& f) { return quote(dir / f); };
  std::vector<int> status;
  status.push_back(shell(cli + " simulate --noise-features 150 --sigma 0.3" + seed + " --output-prefix " + in("sim")));
  status.push_back(shell(cli + " simulate --noise-features 40 --clusters 2 --samples 60" + seed +
                         " --output-prefix " + in("two")));
  status.push_back(shell(cli + " select --input " + in("sim_X.csv") + " --lambda2 100" + seed + " --output " +
                         in("weights.tsv") + " --trace 2> " + in("trace.txt")));
  for (const char* method : {"lapscore", "lapaofs", "lapdofs"}) {
    status.push_back(shell(cli + " baseline --method " + method + " --num-features 10 --input " + in("sim_X.csv") +
                           seed + " --output " + in(std::string("b_") + method + ".tsv")));
  }
  status.push_back(shell(cli + " score --weights " + in("weights.tsv") + " --true-ids " + in("sim_true_ids.txt") +
                         " > " + in("score.txt")));
  status.push_back(shell(cli + " eval-cluster --input " + in("sim_X.csv") + " --labels " + in("sim_labels.txt") +
                         " --lambda2 100 --num-features 4" + seed + " --report " + in("cluster_glfs.txt")));
  status.push_back(shell(cli + " eval-cluster --input " + in("sim_X.csv") + " --labels " + in("sim_labels.txt") +
                         " --selector lapscore --clusterer spectral --num-features 4 --class-subset 3 --repeats 2" +
                         seed + " --report " + in("cluster_spectral.txt")));
  status.push_back(shell(cli + " eval-knn --input " + in("sim_X.csv") + " --labels " + in("sim_labels.txt") +
                         " --selector lapaofs --num-features 4" + seed + " > " + in("knn.txt")));
  status.push_back(shell(cli + " classify --input " + in("two_X.csv") + " --labels " + in("two_labels.txt") +
                         " --train-count 40 --folds 5 --lambda2 1" + seed + " --output " + in("classify.json") +
                         " --report " + in("classify.txt")));
  status.push_back(shell(cli + " sweep-lambda --input " + in("sim_X.csv") + " --lambda2 100 --lambda-min 0.1"
                         " --lambda-max 20 --points 5" + seed + " --output " + in("sweep.csv")));
  return status;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "glfs_acceptance_determinism";
  fs::remove_all(root);
  const fs::path a = root / "a", b = root / "b";
  fs::create_directories(a);
  fs::create_directories(b);
  const std::vector<int> sa = cli_round(a);
  const std::vector<int> sb = cli_round(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] != 0 || sb[i] != 0) {
      return {false, "command " + std::to_string(i) + " exited with status " + std::to_string(sa[i])};
    }
  }
  int files = 0;
  std::string differing;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path name = entry.path().filename();
    ++files;
    if (!fs::exists(b / name) || io::read_file(a / name) != io::read_file(b / name)) {
      differing += " " + name.string();
    }
  }
  const bool same_count = std::distance(fs::directory_iterator(b), fs::directory_iterator{}) == files;
  fs::remove_all(root);
  return {differing.empty() && same_count && files > 0,
          std::to_string(sa.size()) + " invocations x2 (seed 11), " + std::to_string(files) +
              " output files compared" + (differing.empty() ? ", all byte-identical" : ", differ:" + differing)};
}

double brute_laplacian_score(const Vector& f, const Matrix& s) {
  const Index n = f.size();
  Vector d = Vector::Zero(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) d[i] += s(i, j);
  double fd = 0.0;
  for (Index i = 0; i < n; ++i) fd += f[i] * d[i];
  const double mean = fd / d.sum();
  double num = 0.0, den = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) num += (f[i] - f[j]) * (f[i] - f[j]) * s(i, j);
    den += (f[i] - mean) * (f[i] - mean) * d[i];
  }
  return 0.5 * num / den;
}

Outcome baseline_oracles() {
  Rng rng = make_rng(909, 0);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const DataMatrix x(testing::gaussian(5, 6, rng));
    const Matrix s = testing::random_affinity(6, rng);
    const Vector scores = laplacian_score(x, SimilarityGraph(s));
    for (Index r = 0; r < 5; ++r) {
      worst = std::max(worst, testing::rel_err(scores[r], brute_laplacian_score(x.values().row(r).transpose(), s)));
    }
  }
  int mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    const testing::Instance inst = testing::random_instance(kInstanceSeed + i);
    for (auto crit : {VarianceCriterion::Trace, VarianceCriterion::Determinant}) {
      Index best = 0;
      double best_v = 0.0;
      for (Index j = 0; j < inst.x.features(); ++j) {
        const double v = variance_criterion(inst.x, inst.l, inst.lambda1, inst.lambda2, {j}, crit);
        if (j == 0 || (crit == VarianceCriterion::Trace ? v < best_v : v > best_v)) {
          best = j;
          best_v = v;
        }
      }
      if (greedy_variance_select(inst.x, inst.l, inst.lambda1, inst.lambda2, 1, crit) != std::vector<Index>{best}) {
        ++mismatches;
      }
    }
  }
  return {worst <= 1e-10 && mismatches == 0,
          "50 random 5x6 instances (seed 909) max rel err " + fmt(worst) + " <= 1e-10; k=1 exhaustive mismatches " +
              std::to_string(mismatches) + "/40"};
}

}  // namespace

// With no arguments every criterion runs; otherwise only the listed ids.
int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"objective equals the feature-space covariance oracle", oracle_chain},
      {"gradient correctness", gradient_checks},
      {"simulation recovery", simulation_recovery},
      {"sparsity decreases with the penalty", sparsity_curve},
      {"clustering harness sanity", clustering_sanity},
      {"classifier equivalence", classifier_equivalence},
      {"gradient cost linear in d", complexity},
      {"CLI determinism", determinism},
      {"baseline oracles", baseline_oracles},
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const std::string id = std::to_string(i + 1);
    bool wanted = argc < 2;
    for (int a = 1; a < argc; ++a) wanted = wanted || id == argv[a];
    if (wanted) report(static_cast<int>(i + 1), criteria[i].first, criteria[i].second);
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
