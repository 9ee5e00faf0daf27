#include "glfs/select.hpp"

#include "glfs/error.hpp"

namespace glfs {

GlfsProblem build_problem(const DataMatrix& x, const GlfsOptions& options) {
  require(options.graph.neighbors >= 1 && options.graph.neighbors < x.samples(),
          ErrorCode::InvalidParameter, "neighbor count k must satisfy 1 <= k < n");
  const Matrix dists = pairwise_sq_dists(x);
  GraphOptions graph_options = options.graph;
  const double width = options.graph.width.value_or(mean_offdiagonal(dists));
  graph_options.width = width > 0.0 ? width : 1.0;
  SimilarityGraph graph = build_knn_heat_graph(dists, graph_options);
  LaplacianOperator lap = laplacian(graph);
  ManifoldKernel kernel = manifold_kernel(lap, options.lambda1, options.lambda2);
  return GlfsProblem{std::move(graph), std::move(lap), std::move(kernel), *graph_options.width};
}

GlfsSelection glfs_select(const DataMatrix& x, const GlfsOptions& options,
                          const IterationObserver& observer) {
  const GlfsProblem problem = build_problem(x, options);
  GlfsSelection out;
  out.kernel_width = problem.kernel_width;
  out.search = lambda_line_search(x, problem.kernel, options.optimizer, options.schedule, observer);
  return out;
}

}  // namespace glfs
