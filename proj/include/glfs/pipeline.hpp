#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "glfs/error.hpp"
#include "glfs/optimizer.hpp"
#include "glfs/simulate.hpp"

namespace glfs {

/// Everything a CLI invocation can configure. Defaults mirror the flags.
struct RunConfig {
  std::string subcommand;

  // Inputs
  std::string input;
  std::string labels;
  std::string weights;
  std::string true_ids;

  // Outputs
  std::string output;         // primary table (TSV / CSV)
  std::string summary;        // JSON summary; defaults to <output>.json
  std::string output_prefix;  // simulate
  std::string report;         // key-value EvalReport; stdout when empty

  // Model
  double lambda1 = 0.1;
  double lambda2 = 0.01;
  int graph_k = 5;
  std::optional<double> kernel_width;  // nullopt = auto
  double lambda0 = 1e-4;
  double c = 1024.0;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
  bool trace = false;

  // baseline / selection for evaluation
  std::string method = "lapscore";  // lapscore | lapaofs | lapdofs (baseline)
  std::string selector = "glfs";    // glfs | lapscore | lapaofs | lapdofs | all
  Index num_features = 100;

  // simulate
  SimulationConfig simulation;

  // eval-cluster / eval-knn
  std::string clusterer = "kmeans";  // kmeans | spectral
  int clusters = 0;                  // 0 = number of distinct labels
  int restarts = 10;
  int class_subset = 0;              // 0 = use every class
  int repeats = 1;

  // classify
  Index train_count = 0;  // 0 = every sample is training data
  int folds = 10;
  std::vector<double> lambda_grid;  // empty = λ0·2^t, t = 0..⌊log₂C⌋

  // sweep-lambda
  double lambda_min = 1e-3;
  double lambda_max = 1e2;
  int points = 10;
};

/// Runs one subcommand. Returns the process exit status; on failure prints a
/// single `error: <code>: <message>` line to `err` and leaves no outputs.
int run_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Exit status used for each error code (0 is success).
int exit_status(ErrorCode code) noexcept;

/// Log-spaced grid with `points` values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace glfs
