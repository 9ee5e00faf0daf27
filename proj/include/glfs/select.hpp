#pragma once

#include "glfs/graph.hpp"
#include "glfs/optimizer.hpp"
#include "glfs/types.hpp"

namespace glfs {

struct GlfsOptions {
  GraphOptions graph;
  double lambda1 = 0.1;
  double lambda2 = 0.01;
  OptimizerConfig optimizer;
  PenaltySchedule schedule;
};

struct GlfsSelection {
  LineSearchResult search;
  double kernel_width = 0.0;  // the t actually used
};

/// Full GLFS pipeline: kNN heat graph → Laplacian → manifold kernel →
/// penalty schedule with orthant-wise descent at each probe.
GlfsSelection glfs_select(const DataMatrix& x, const GlfsOptions& options,
                          const IterationObserver& observer = {});

/// Graph and kernel only, for callers that sweep λ themselves.
struct GlfsProblem {
  SimilarityGraph graph;
  LaplacianOperator laplacian;
  ManifoldKernel kernel;
  double kernel_width = 0.0;
};

GlfsProblem build_problem(const DataMatrix& x, const GlfsOptions& options);

}  // namespace glfs
