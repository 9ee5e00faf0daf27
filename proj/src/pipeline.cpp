#include "glfs/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

#include <json.hpp>

#include "glfs/baselines.hpp"
#include "glfs/classifier.hpp"
#include "glfs/clustering.hpp"
#include "glfs/io.hpp"
#include "glfs/metrics.hpp"
#include "glfs/random.hpp"
#include "glfs/select.hpp"

namespace glfs {

namespace {

using json = nlohmann::ordered_json;

// Numbers in summaries carry 12 significant digits.
double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(io::format_number(v));
}

json number(double v) {
  if (std::isfinite(v)) return round12(v);
  return io::format_number(v);  // "inf" / "-inf" / "nan" as strings
}

std::string summary_path(const RunConfig& cfg, const std::string& fallback_output) {
  if (!cfg.summary.empty()) return cfg.summary;
  return (cfg.output.empty() ? fallback_output : cfg.output) + ".json";
}

void need(const std::string& value, const char* flag) {
  require(!value.empty(), ErrorCode::InvalidParameter, std::string("missing required flag ") + flag);
}

GlfsOptions glfs_options(const RunConfig& cfg) {
  GlfsOptions opt;
  opt.graph.neighbors = cfg.graph_k;
  opt.graph.width = cfg.kernel_width;
  opt.lambda1 = cfg.lambda1;
  opt.lambda2 = cfg.lambda2;
  opt.optimizer = cfg.optimizer;
  opt.schedule = PenaltySchedule{cfg.lambda0, cfg.c};
  return opt;
}

json model_json(const RunConfig& cfg) {
  json j;
  j["lambda1"] = number(cfg.lambda1);
  j["lambda2"] = number(cfg.lambda2);
  j["graph_k"] = cfg.graph_k;
  j["kernel_width"] = cfg.kernel_width ? number(*cfg.kernel_width) : json("auto");
  j["seed"] = cfg.seed;
  return j;
}

IterationObserver trace_observer(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.trace) return {};
  return [&err](const IterationRecord& r) {
    err << r.iteration << '\t' << io::format_number(r.objective) << '\t' << r.support_size << '\t'
        << io::format_number(r.step_size) << '\n';
  };
}

// GLFS with the penalty schedule, tracing each probe when asked.
LineSearchResult run_glfs(const DataMatrix& x, const RunConfig& cfg, std::ostream& err,
                          double* width_used = nullptr) {
  const GlfsOptions opt = glfs_options(cfg);
  const GlfsProblem problem = build_problem(x, opt);
  if (width_used) *width_used = problem.kernel_width;
  const CovarianceObjective objective(x, problem.kernel);
  const FeatureWeights start = FeatureWeights::ones(x.features());
  const IterationObserver observer = trace_observer(cfg, err);
  return lambda_line_search(
      [&](double lambda) {
        if (cfg.trace) err << "# lambda\t" << io::format_number(lambda) << '\n';
        return owd_minimize(objective, lambda, start, opt.optimizer, observer);
      },
      opt.schedule);
}

std::string ranked_table(const std::vector<Index>& order, const std::vector<double>& values) {
  std::string out;
  for (std::size_t r = 0; r < order.size(); ++r) {
    out += std::to_string(order[r]);
    out += '\t';
    out += io::format_number(values[r]);
    out += '\n';
  }
  return out;
}

std::vector<Index> ascending_order(const Vector& scores) {
  std::vector<Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return scores[a] < scores[b]; });
  return order;
}

VarianceCriterion criterion_for(const std::string& method) {
  return method == "lapdofs" ? VarianceCriterion::Determinant : VarianceCriterion::Trace;
}

// Features used by the evaluation commands, best first.
std::vector<Index> features_for_evaluation(const DataMatrix& x, const RunConfig& cfg,
                                           std::ostream& err) {
  const std::string& sel = cfg.selector;
  const Index want = std::min<Index>(cfg.num_features, x.features());
  require(cfg.num_features >= 1, ErrorCode::InvalidParameter, "--num-features must be >= 1");
  if (sel == "all") {
    std::vector<Index> all(static_cast<std::size_t>(x.features()));
    std::iota(all.begin(), all.end(), Index{0});
    return all;
  }
  if (sel == "glfs") {
    const LineSearchResult r = run_glfs(x, cfg, err);
    const Vector& beta = r.solution.beta.values();
    const Index take = std::min<Index>(want, r.solution.support_size);
    return top_k_features(beta, take);
  }
  const GlfsOptions opt = glfs_options(cfg);
  const GlfsProblem problem = build_problem(x, opt);
  if (sel == "lapscore") {
    std::vector<Index> order = ascending_order(laplacian_score(x, problem.graph));
    order.resize(static_cast<std::size_t>(want));
    return order;
  }
  if (sel == "lapaofs" || sel == "lapdofs") {
    return greedy_variance_select(x, problem.laplacian, cfg.lambda1, cfg.lambda2, want,
                                  criterion_for(sel));
  }
  fail(ErrorCode::InvalidParameter, "unknown selector '" + sel + "'");
}

int distinct_count(const std::vector<int>& labels) {
  return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

// Samples belonging to `count` classes drawn without replacement.
std::vector<Index> class_subset(const std::vector<int>& labels, int count, Rng& rng) {
  std::vector<int> classes;
  for (int c : std::set<int>(labels.begin(), labels.end())) classes.push_back(c);
  require(count <= static_cast<int>(classes.size()), ErrorCode::InvalidParameter,
          "--class-subset exceeds the number of classes");
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(classes.size()) - 1);
    std::swap(classes[static_cast<std::size_t>(i)], classes[static_cast<std::size_t>(pick(rng))]);
  }
  const std::set<int> keep(classes.begin(), classes.begin() + count);
  std::vector<Index> ids;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (keep.count(labels[j])) ids.push_back(static_cast<Index>(j));
  }
  return ids;
}

std::string report_table(const json& report) {
  std::string out;
  for (const auto& [key, value] : report.items()) {
    out += key;
    out += '\t';
    out += value.is_string() ? value.get<std::string>() : value.dump();
    out += '\n';
  }
  return out;
}

void emit_report(const RunConfig& cfg, const json& report, io::OutputSet& outputs,
                 std::ostream& out) {
  const std::string table = report_table(report);
  if (cfg.report.empty()) {
    out << table;
  } else {
    outputs.write(cfg.report, table);
  }
}

// ---------------------------------------------------------------------------

void cmd_select(const RunConfig& cfg, io::OutputSet& outputs, std::ostream& err) {
  need(cfg.input, "--input");
  const DataMatrix x = io::load_matrix(cfg.input);
  double width = 0.0;
  const LineSearchResult r = run_glfs(x, cfg, err, &width);
  const Vector& beta = r.solution.beta.values();

  const std::vector<Index> order = top_k_features(beta, beta.size());
  std::vector<double> values;
  for (Index i : order) values.push_back(beta[i]);
  const std::string output = cfg.output.empty() ? "weights.tsv" : cfg.output;
  outputs.write(output, ranked_table(order, values));

  json s;
  s["command"] = "select";
  s["model"] = model_json(cfg);
  s["kernel_width_used"] = number(width);
  s["lambda0"] = number(cfg.lambda0);
  s["C"] = number(cfg.c);
  s["chosen_lambda"] = number(r.lambda);
  s["support_size"] = r.solution.support_size;
  s["objective"] = number(r.solution.objective_value);
  s["iterations"] = r.solution.iterations;
  s["converged"] = r.solution.converged;
  s["early_stopped"] = r.early_stopped;
  json hist = json::array();
  for (const auto& p : r.history) {
    hist.push_back({{"lambda", number(p.lambda)}, {"support_size", p.support_size}});
  }
  s["history"] = hist;
  outputs.write(summary_path(cfg, "weights.tsv"), s.dump(2) + "\n");
}

void cmd_baseline(const RunConfig& cfg, io::OutputSet& outputs) {
  need(cfg.input, "--input");
  const DataMatrix x = io::load_matrix(cfg.input);
  const GlfsOptions opt = glfs_options(cfg);
  const GlfsProblem problem = build_problem(x, opt);

  std::vector<Index> order;
  std::vector<double> values;
  if (cfg.method == "lapscore") {
    const Vector scores = laplacian_score(x, problem.graph);
    order = ascending_order(scores);
    for (Index i : order) values.push_back(scores[i]);
  } else if (cfg.method == "lapaofs" || cfg.method == "lapdofs") {
    require(cfg.num_features >= 1, ErrorCode::InvalidParameter, "--num-features must be >= 1");
    const Index k = std::min<Index>(cfg.num_features, x.features());
    order = greedy_variance_select(x, problem.laplacian, cfg.lambda1, cfg.lambda2, k,
                                   criterion_for(cfg.method), &values);
  } else {
    fail(ErrorCode::InvalidParameter, "unknown baseline method '" + cfg.method + "'");
  }
  const std::string output = cfg.output.empty() ? "baseline.tsv" : cfg.output;
  outputs.write(output, ranked_table(order, values));

  json s;
  s["command"] = "baseline";
  s["method"] = cfg.method;
  s["model"] = model_json(cfg);
  s["features_ranked"] = order.size();
  outputs.write(summary_path(cfg, "baseline.tsv"), s.dump(2) + "\n");
}

void cmd_simulate(const RunConfig& cfg, io::OutputSet& outputs) {
  const LabeledDataset data = simulate(cfg.simulation, cfg.seed);
  const std::string prefix = cfg.output_prefix.empty() ? "sim" : cfg.output_prefix;
  outputs.write(prefix + "_X.csv", io::matrix_to_csv(data.x.values()));
  std::string labels;
  for (int l : data.labels) labels += std::to_string(l) + "\n";
  outputs.write(prefix + "_labels.txt", labels);
  std::string ids;
  for (Index i : data.true_feature_ids) ids += std::to_string(i) + "\n";
  outputs.write(prefix + "_true_ids.txt", ids);

  const SimulationConfig& sc = cfg.simulation;
  json s;
  s["command"] = "simulate";
  s["seed"] = cfg.seed;
  s["samples"] = sc.n_samples;
  s["informative_features"] = sc.n_informative;
  s["noise_features"] = sc.n_noise;
  s["sigma"] = number(sc.noise_sigma);
  s["clusters"] = sc.n_clusters;
  s["cluster_mean_scale"] = number(sc.cluster_mean_scale);
  s["informative_within_std"] = number(sc.informative_within_std);
  s["true_feature_ids"] = data.true_feature_ids;
  outputs.write(prefix + ".json", s.dump(2) + "\n");
}

void cmd_score(const RunConfig& cfg, io::OutputSet& outputs, std::ostream& out) {
  need(cfg.weights, "--weights");
  need(cfg.true_ids, "--true-ids");
  const std::vector<Index> ranked = io::load_ranked_features(cfg.weights);
  const std::vector<Index> truth = io::load_indices(cfg.true_ids);
  Index d = 0;
  for (Index i : ranked) d = std::max(d, i + 1);
  for (Index i : truth) d = std::max(d, i + 1);
  // File order is the ranking; unlisted features rank after listed ones.
  Vector weights = Vector::Zero(d);
  std::set<Index> seen;
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    require(seen.insert(ranked[r]).second, ErrorCode::InvalidInput,
            "feature " + std::to_string(ranked[r]) + " listed twice");
    weights[ranked[r]] = static_cast<double>(ranked.size() - r);
  }
  const double score = ranking_score(weights, truth);
  out << io::format_number(score) << '\n';
  if (!cfg.output.empty()) {
    json s;
    s["command"] = "score";
    s["score"] = number(score);
    outputs.write(cfg.output, s.dump(2) + "\n");
  }
}

void cmd_evaluate(const RunConfig& cfg, bool clustering, io::OutputSet& outputs, std::ostream& out,
                  std::ostream& err) {
  need(cfg.input, "--input");
  need(cfg.labels, "--labels");
  require(cfg.repeats >= 1, ErrorCode::InvalidParameter, "--repeats must be >= 1");
  const DataMatrix x = io::load_matrix(cfg.input);
  const std::vector<int> labels = io::load_labels(cfg.labels);
  require(static_cast<Index>(labels.size()) == x.samples(), ErrorCode::InvalidInput,
          "label count does not match the number of samples (columns)");

  json report;
  report["command"] = clustering ? "eval-cluster" : "eval-knn";
  report["selector"] = cfg.selector;
  if (clustering) report["clusterer"] = cfg.clusterer;
  report["seed"] = cfg.seed;
  report["repeats"] = cfg.repeats;

  std::vector<double> metric;
  std::vector<Index> selected_counts;
  for (int rep = 0; rep < cfg.repeats; ++rep) {
    DataMatrix xr = x;
    std::vector<int> lr = labels;
    if (cfg.class_subset > 0) {
      Rng rng = make_rng(cfg.seed, 0x10000u + static_cast<std::uint64_t>(rep));
      const std::vector<Index> ids = class_subset(labels, cfg.class_subset, rng);
      xr = x.select_samples(ids);
      lr.clear();
      for (Index j : ids) lr.push_back(labels[static_cast<std::size_t>(j)]);
    }
    const std::vector<Index> features = features_for_evaluation(xr, cfg, err);
    require(!features.empty(), ErrorCode::EmptySelection, "selector returned no features");
    selected_counts.push_back(static_cast<Index>(features.size()));
    const Matrix xs = xr.select_features(features).values();
    const std::uint64_t rep_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(rep));

    if (clustering) {
      const int k = cfg.clusters > 0 ? cfg.clusters : distinct_count(lr);
      std::vector<int> assigned;
      if (cfg.clusterer == "kmeans") {
        assigned = kmeans(xs, k, cfg.restarts, rep_seed).labels;
      } else if (cfg.clusterer == "spectral") {
        GraphOptions g;
        g.neighbors = cfg.graph_k;
        g.width = cfg.kernel_width;
        assigned = spectral_cluster(build_knn_heat_graph(DataMatrix(xs), g), k, rep_seed);
      } else {
        fail(ErrorCode::InvalidParameter, "unknown clusterer '" + cfg.clusterer + "'");
      }
      metric.push_back(nmi(lr, assigned));
    } else {
      metric.push_back(loo_1nn_accuracy(xs, lr));
    }
  }

  const double mean = std::accumulate(metric.begin(), metric.end(), 0.0) /
                      static_cast<double>(metric.size());
  report["n_selected"] = selected_counts.front();
  report[clustering ? "nmi" : "accuracy"] = number(mean);
  if (cfg.repeats > 1) {
    for (std::size_t r = 0; r < metric.size(); ++r) {
      report[std::string(clustering ? "nmi_" : "accuracy_") + std::to_string(r)] = number(metric[r]);
    }
  }
  emit_report(cfg, report, outputs, out);
}

std::vector<int> binary_labels(const std::vector<int>& labels) {
  std::vector<int> classes;
  for (int c : std::set<int>(labels.begin(), labels.end())) classes.push_back(c);
  require(classes.size() <= 2, ErrorCode::InvalidInput, "classify needs at most two classes");
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) out.push_back(l == classes.front() ? 0 : 1);
  return out;
}

std::string fraction(int errors, Index total) {
  return std::to_string(errors) + "/" + std::to_string(total);
}

void cmd_classify(const RunConfig& cfg, io::OutputSet& outputs, std::ostream& out) {
  need(cfg.input, "--input");
  need(cfg.labels, "--labels");
  const DataMatrix x = io::load_matrix(cfg.input);
  const std::vector<int> labels = binary_labels(io::load_labels(cfg.labels));
  require(static_cast<Index>(labels.size()) == x.samples(), ErrorCode::InvalidInput,
          "label count does not match the number of samples (columns)");
  const Index n_train = cfg.train_count > 0 ? cfg.train_count : x.samples();
  require(n_train >= 2 && n_train <= x.samples(), ErrorCode::InvalidParameter,
          "--train-count must lie in [2, n]");

  std::vector<Index> train_ids(static_cast<std::size_t>(n_train));
  std::iota(train_ids.begin(), train_ids.end(), Index{0});
  std::vector<Index> test_ids;
  for (Index j = n_train; j < x.samples(); ++j) test_ids.push_back(j);
  const DataMatrix train = x.select_samples(train_ids);
  const std::vector<int> train_labels(labels.begin(), labels.begin() + n_train);

  std::vector<double> grid = cfg.lambda_grid;
  if (grid.empty()) {
    const int t_max = PenaltySchedule{cfg.lambda0, cfg.c}.max_steps();
    for (int t = 0; t <= t_max; ++t) grid.push_back(std::ldexp(cfg.lambda0, t));
  }
  SelectionSettings settings;
  settings.graph.neighbors = cfg.graph_k;
  settings.graph.width = cfg.kernel_width;
  settings.lambda1 = cfg.lambda1;
  settings.lambda2 = cfg.lambda2;
  settings.optimizer = cfg.optimizer;

  const CvResult cv = kfold_cv(train, train_labels, cfg.folds, grid, cfg.seed, settings);
  const TrainedClassifier model = train_glfs_classifier(train, train_labels, cv.best_lambda, settings);

  int test_errors = 0;
  if (!test_ids.empty()) {
    const std::vector<int> predicted = predict_glfs_classifier(model, x.select_samples(test_ids));
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      if (predicted[i] != labels[static_cast<std::size_t>(test_ids[i])]) ++test_errors;
    }
  }

  json report;
  report["command"] = "classify";
  report["chosen_lambda"] = number(cv.best_lambda);
  report["cv_errors"] = fraction(cv.best_errors, n_train);
  report["test_errors"] = fraction(test_errors, static_cast<Index>(test_ids.size()));
  report["genes_selected"] = model.selected.size();
  emit_report(cfg, report, outputs, out);

  if (!cfg.output.empty()) {
    json s = report;
    s["model"] = model_json(cfg);
    s["folds"] = cfg.folds;
    json entries = json::array();
    for (const CvEntry& e : cv.entries) {
      entries.push_back(
          {{"lambda", number(e.lambda)}, {"cv_errors", e.errors}, {"support_size", e.support}});
    }
    s["grid"] = entries;
    s["selected_features"] = model.selected;
    outputs.write(cfg.output, s.dump(2) + "\n");
  }
}

void cmd_sweep(const RunConfig& cfg, io::OutputSet& outputs, std::ostream& err) {
  need(cfg.input, "--input");
  const DataMatrix x = io::load_matrix(cfg.input);
  const std::vector<double> grid =
      cfg.lambda_grid.empty() ? log_grid(cfg.lambda_min, cfg.lambda_max, cfg.points)
                              : cfg.lambda_grid;
  const GlfsOptions opt = glfs_options(cfg);
  const GlfsProblem problem = build_problem(x, opt);
  const CovarianceObjective objective(x, problem.kernel);
  const FeatureWeights start = FeatureWeights::ones(x.features());
  const IterationObserver observer = trace_observer(cfg, err);

  std::string csv = "lambda,support_size,objective\n";
  json rows = json::array();
  for (double lambda : grid) {
    if (cfg.trace) err << "# lambda\t" << io::format_number(lambda) << '\n';
    const SolveResult r = owd_minimize(objective, lambda, start, opt.optimizer, observer);
    csv += io::format_number(lambda) + "," + std::to_string(r.support_size) + "," +
           io::format_number(r.objective_value) + "\n";
    rows.push_back({{"lambda", number(lambda)},
                    {"support_size", r.support_size},
                    {"objective", number(r.objective_value)},
                    {"iterations", r.iterations}});
  }
  const std::string output = cfg.output.empty() ? "sweep.csv" : cfg.output;
  outputs.write(output, csv);
  json s;
  s["command"] = "sweep-lambda";
  s["model"] = model_json(cfg);
  s["points"] = rows;
  outputs.write(summary_path(cfg, "sweep.csv"), s.dump(2) + "\n");
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int points) {
  require(lo > 0.0 && hi >= lo, ErrorCode::InvalidParameter,
          "log grid needs 0 < lambda-min <= lambda-max");
  require(points >= 1, ErrorCode::InvalidParameter, "grid needs at least one point");
  std::vector<double> grid;
  if (points == 1) return {lo};
  const double step = (std::log(hi) - std::log(lo)) / (points - 1);
  for (int i = 0; i < points; ++i) grid.push_back(std::exp(std::log(lo) + step * i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return 2;
    case ErrorCode::InvalidInput: return 3;
    case ErrorCode::ParseError: return 4;
    case ErrorCode::IoError: return 5;
    case ErrorCode::NumericalError: return 6;
    case ErrorCode::EmptySelection: return 7;
  }
  return 1;
}

int run_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err) {
  io::OutputSet outputs;
  try {
    const std::string& cmd = config.subcommand;
    if (cmd == "select") {
      cmd_select(config, outputs, err);
    } else if (cmd == "baseline") {
      cmd_baseline(config, outputs);
    } else if (cmd == "simulate") {
      cmd_simulate(config, outputs);
    } else if (cmd == "score") {
      cmd_score(config, outputs, out);
    } else if (cmd == "eval-cluster") {
      cmd_evaluate(config, true, outputs, out, err);
    } else if (cmd == "eval-knn") {
      cmd_evaluate(config, false, outputs, out, err);
    } else if (cmd == "classify") {
      cmd_classify(config, outputs, out);
    } else if (cmd == "sweep-lambda") {
      cmd_sweep(config, outputs, err);
    } else {
      fail(ErrorCode::InvalidParameter, "unknown subcommand '" + cmd + "'");
    }
    outputs.commit();
    return 0;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace glfs
