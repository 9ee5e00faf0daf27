// glfs: feature selection, baselines and evaluation harness.
//
// Every flag can also be set through an environment variable: GLFS_ followed
// by the flag name in upper case with dashes turned into underscores
// (--lambda1 -> GLFS_LAMBDA1, --graph-k -> GLFS_GRAPH_K). Flags win.

#include <cctype>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "glfs/pipeline.hpp"

namespace {

std::string env_name(const std::string& flag) {
  std::string name = "GLFS_";
  for (char ch : flag) name += ch == '-' ? '_' : static_cast<char>(std::toupper(ch));
  return name;
}

template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(env_name(name))->capture_default_str();
}

void model_flags(CLI::App* app, glfs::RunConfig& cfg, std::string& width) {
  flag(app, "lambda1", cfg.lambda1, "graph smoothness weight");
  flag(app, "lambda2", cfg.lambda2, "ridge weight");
  flag(app, "graph-k", cfg.graph_k, "neighbors in the kNN graph");
  flag(app, "kernel-width", width, "heat kernel width t, or 'auto'");
}

void optimizer_flags(CLI::App* app, glfs::RunConfig& cfg) {
  flag(app, "lambda0", cfg.lambda0, "first penalty of the schedule");
  flag(app, "C", cfg.c, "schedule growth constant");
  flag(app, "max-iter", cfg.optimizer.max_iter, "optimizer iteration cap");
  flag(app, "tol-obj", cfg.optimizer.tol_obj, "relative objective tolerance");
  flag(app, "tol-grad", cfg.optimizer.tol_grad, "relative projected-gradient tolerance");
  flag(app, "lbfgs-memory", cfg.optimizer.lbfgs_memory, "L-BFGS history length");
  app->add_flag("--trace", cfg.trace, "print optimizer iterations to stderr")
      ->envname(env_name("trace"));
}

void seed_flag(CLI::App* app, glfs::RunConfig& cfg) {
  flag(app, "seed", cfg.seed, "master seed");
}

void selector_flags(CLI::App* app, glfs::RunConfig& cfg) {
  flag(app, "selector", cfg.selector, "glfs|lapscore|lapaofs|lapdofs|all")
      ->check(CLI::IsMember({"glfs", "lapscore", "lapaofs", "lapdofs", "all"}));
  flag(app, "num-features", cfg.num_features, "features kept for evaluation");
  flag(app, "class-subset", cfg.class_subset, "classes drawn per repeat (0 = all)");
  flag(app, "repeats", cfg.repeats, "independent repeats");
  flag(app, "report", cfg.report, "report file (stdout if omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  glfs::RunConfig cfg;
  std::string width = "auto";

  CLI::App app{"Graph-based feature selection toolkit"};
  app.require_subcommand(1);

  auto* select = app.add_subcommand("select", "select features with the covariance-trace criterion");
  flag(select, "input", cfg.input, "feature-by-sample CSV")->required();
  flag(select, "output", cfg.output, "weights TSV (default weights.tsv)");
  flag(select, "summary", cfg.summary, "JSON summary (default <output>.json)");
  model_flags(select, cfg, width);
  optimizer_flags(select, cfg);
  seed_flag(select, cfg);

  auto* baseline = app.add_subcommand("baseline", "rank features with a baseline method");
  flag(baseline, "input", cfg.input, "feature-by-sample CSV")->required();
  flag(baseline, "method", cfg.method, "lapscore|lapaofs|lapdofs")
      ->check(CLI::IsMember({"lapscore", "lapaofs", "lapdofs"}));
  flag(baseline, "num-features", cfg.num_features, "features picked by the greedy methods");
  flag(baseline, "output", cfg.output, "ranking TSV (default baseline.tsv)");
  flag(baseline, "summary", cfg.summary, "JSON summary (default <output>.json)");
  model_flags(baseline, cfg, width);
  seed_flag(baseline, cfg);

  auto* simulate = app.add_subcommand("simulate", "generate the planted-cluster dataset");
  flag(simulate, "output-prefix", cfg.output_prefix, "prefix for generated files (default sim)");
  flag(simulate, "samples", cfg.simulation.n_samples, "number of samples");
  flag(simulate, "noise-features", cfg.simulation.n_noise, "number of noise features");
  flag(simulate, "sigma", cfg.simulation.noise_sigma, "noise standard deviation");
  flag(simulate, "clusters", cfg.simulation.n_clusters, "number of clusters");
  seed_flag(simulate, cfg);

  auto* score = app.add_subcommand("score", "score a ranking against the planted features");
  flag(score, "weights", cfg.weights, "ranked TSV, best first")->required();
  flag(score, "true-ids", cfg.true_ids, "planted feature ids, one per line")->required();
  flag(score, "output", cfg.output, "optional JSON with the score");

  auto* cluster = app.add_subcommand("eval-cluster", "cluster on selected features and report NMI");
  flag(cluster, "input", cfg.input, "feature-by-sample CSV")->required();
  flag(cluster, "labels", cfg.labels, "class label per sample")->required();
  flag(cluster, "clusterer", cfg.clusterer, "kmeans|spectral")
      ->check(CLI::IsMember({"kmeans", "spectral"}));
  flag(cluster, "clusters", cfg.clusters, "cluster count (0 = number of classes)");
  flag(cluster, "restarts", cfg.restarts, "k-means restarts");
  selector_flags(cluster, cfg);
  model_flags(cluster, cfg, width);
  optimizer_flags(cluster, cfg);
  seed_flag(cluster, cfg);

  auto* knn = app.add_subcommand("eval-knn", "leave-one-out 1-NN accuracy on selected features");
  flag(knn, "input", cfg.input, "feature-by-sample CSV")->required();
  flag(knn, "labels", cfg.labels, "class label per sample")->required();
  selector_flags(knn, cfg);
  model_flags(knn, cfg, width);
  optimizer_flags(knn, cfg);
  seed_flag(knn, cfg);

  auto* classify = app.add_subcommand("classify", "cross-validated selection plus LapRLS classifier");
  flag(classify, "input", cfg.input, "feature-by-sample CSV")->required();
  flag(classify, "labels", cfg.labels, "two-class label per sample")->required();
  flag(classify, "train-count", cfg.train_count, "leading samples used for training (0 = all)");
  flag(classify, "folds", cfg.folds, "cross-validation folds");
  flag(classify, "lambda-grid", cfg.lambda_grid, "penalties to cross-validate")->delimiter(',');
  flag(classify, "output", cfg.output, "optional JSON with the full CV table");
  flag(classify, "report", cfg.report, "report file (stdout if omitted)");
  model_flags(classify, cfg, width);
  optimizer_flags(classify, cfg);
  seed_flag(classify, cfg);

  auto* sweep = app.add_subcommand("sweep-lambda", "support size over a penalty grid");
  flag(sweep, "input", cfg.input, "feature-by-sample CSV")->required();
  flag(sweep, "lambda-min", cfg.lambda_min, "smallest penalty");
  flag(sweep, "lambda-max", cfg.lambda_max, "largest penalty");
  flag(sweep, "points", cfg.points, "grid points (log spaced)");
  flag(sweep, "lambda-grid", cfg.lambda_grid, "explicit penalties, overrides the log grid")
      ->delimiter(',');
  flag(sweep, "output", cfg.output, "CSV (default sweep.csv)");
  flag(sweep, "summary", cfg.summary, "JSON summary (default <output>.json)");
  model_flags(sweep, cfg, width);
  optimizer_flags(sweep, cfg);
  seed_flag(sweep, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << glfs::to_string(glfs::ErrorCode::InvalidParameter) << ": "
              << e.what() << '\n';
    return glfs::exit_status(glfs::ErrorCode::InvalidParameter);
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (width != "auto") {
    try {
      std::size_t used = 0;
      cfg.kernel_width = std::stod(width, &used);
      if (used != width.size()) throw std::invalid_argument(width);
    } catch (const std::exception&) {
      std::cerr << "error: invalid-parameter: --kernel-width must be a number or 'auto'\n";
      return glfs::exit_status(glfs::ErrorCode::InvalidParameter);
    }
  }
  return glfs::run_pipeline(cfg, std::cout, std::cerr);
}
