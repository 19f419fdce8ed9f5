#ifndef ARCOL_PIPELINE_HPP
#define ARCOL_PIPELINE_HPP

#include "arcol/decompose.hpp"
#include "arcol/distribution.hpp"
#include "arcol/metrics.hpp"
#include "arcol/refine.hpp"
#include "arcol/tree_attach.hpp"

#include <functional>
#include <string>
#include <vector>

namespace arcol {

struct PipelineResult {
  LayoutState layout;
  MetricsReport metrics;
  RefineReport refine;
  RunResult distribution;
  Decomposition decomposition;
  std::vector<PlacementRecord> placements;
};

/// The full pass: peel trees, distribute the core, orthogonalize, attach
/// the trees, compact and route, then the bounded rescale (or the exact
/// fit when cfg.force_fit). cfg.baseline turns every aspect-ratio
/// mechanism off. Deterministic per seed; the output edge order matches
/// the input graph's.
PipelineResult run_pipeline(const Graph& g, const LayoutConfig& cfg,
                            const TraceSink& trace = {});

struct CompareCell {
  std::string graph_name;
  std::string target_name;
  double target = 1.0;
  MetricsReport arcol;
  MetricsReport baseline;     // unconstrained
  MetricsReport post_scaled;  // unconstrained, then exact-fit
  bool failed = false;
  std::string error;
};

struct CompareResult {
  std::vector<CompareCell> cells;

  // Corpus means per (target, method) plus the overall "avg" rows,
  // mirroring the per-ratio grouping of the comparison table.
  std::string to_csv() const;
};

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Runs every (graph, target) cell three ways with identical seeds and
/// configs except the aspect-ratio mechanisms. Per-cell failures are
/// recorded, the table is still produced. The optional sink receives
/// (cell, variant, layout) for gallery rendering.
using CompareSink = std::function<void(
    const CompareCell&, const std::string& variant, const LayoutState&)>;

CompareResult compare(const std::vector<NamedGraph>& graphs,
                      const std::vector<AspectRatioTarget>& targets,
                      const LayoutConfig& cfg, const CompareSink& sink = {});

}  // namespace arcol

#endif
