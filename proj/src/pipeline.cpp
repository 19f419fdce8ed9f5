#include "arcol/pipeline.hpp"

#include "arcol/io.hpp"
#include "arcol/metrics.hpp"
#include "arcol/orthogonalize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace arcol {

namespace {

// Reorders edges (and their routes) to the reference graph's edge order.
LayoutState with_edge_order(const LayoutState& s, const Graph& reference) {
  LayoutState out;
  out.stage = s.stage;
  out.post_scaled_baseline = s.post_scaled_baseline;
  out.pos = s.pos;
  for (const NodeInfo& n : s.graph.nodes()) {
    out.graph.add_node(n.id, n.w, n.h, n.dummy);
  }
  std::map<Edge, int> route_index;
  for (int e = 0; e < s.graph.edge_count(); ++e) {
    route_index[s.graph.edges()[e]] = e;
  }
  for (const Edge& e : reference.edges()) {
    const auto it = route_index.find(e);
    if (it == route_index.end()) {
      throw ValidationError("pipeline lost an input edge");
    }
    out.graph.add_edge(e.u, e.v);
    out.routes.push_back(s.routes[it->second]);
  }
  if (out.graph.edge_count() != s.graph.edge_count()) {
    throw ValidationError("pipeline gained an edge not present in the input");
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline(const Graph& g, const LayoutConfig& cfg,
                            const TraceSink& trace) {
  cfg.validate();
  g.validate_connected();
  PipelineResult result;

  result.decomposition = peel_trees(g);
  for (PeeledTree& t : result.decomposition.trees) {
    symmetric_tree_layout(t, cfg.ideal_edge_length);
  }

  result.distribution = distribution_phase(result.decomposition.core, cfg, trace);
  auto [routed, pc] = orthogonalize_core(result.distribution.layout, cfg);
  LayoutState attached = attach_trees(result.decomposition, routed, pc, cfg,
                                      &result.placements);
  LayoutState compact = compact_and_route(attached, cfg.ideal_edge_length);

  LayoutState final_state = compact;
  if (cfg.force_fit) {
    final_state = force_fit(compact, cfg.target_ar);
    const BoundingBox before = bounding_box(compact);
    const BoundingBox after = bounding_box(final_state);
    result.refine.ar_before = before.aspect_ratio();
    result.refine.ar_after = after.aspect_ratio();
    result.refine.s_x_applied = std::sqrt(cfg.target_ar.value /
                                          before.aspect_ratio());
    result.refine.s_y_applied = 1.0 / result.refine.s_x_applied;
  } else if (!cfg.baseline) {
    auto [refined, report] = final_rescale(compact, cfg);
    final_state = std::move(refined);
    result.refine = report;
  } else {
    result.refine.ar_before = result.refine.ar_after =
        bounding_box(compact).aspect_ratio();
    result.refine.skipped = true;
    final_state.stage = Stage::refined;
  }

  result.layout = with_edge_order(final_state, g);
  const Eigen::MatrixXd d = graph_distances(g, cfg.ideal_edge_length);
  result.metrics = report(result.layout, d);
  return result;
}

CompareResult compare(const std::vector<NamedGraph>& graphs,
                      const std::vector<AspectRatioTarget>& targets,
                      const LayoutConfig& cfg, const CompareSink& sink) {
  CompareResult result;
  for (const NamedGraph& ng : graphs) {
    // one unconstrained baseline per graph, shared across targets
    LayoutConfig base_cfg = cfg;
    base_cfg.baseline = true;
    base_cfg.force_fit = false;
    PipelineResult baseline;
    bool baseline_ok = true;
    std::string baseline_error;
    try {
      baseline = run_pipeline(ng.graph, base_cfg);
    } catch (const std::exception& e) {
      baseline_ok = false;
      baseline_error = e.what();
    }
    const Eigen::MatrixXd d = graph_distances(ng.graph, cfg.ideal_edge_length);

    for (const AspectRatioTarget& target : targets) {
      CompareCell cell;
      cell.graph_name = ng.name;
      cell.target = target.value;
      std::ostringstream tn;
      tn << target.value;
      cell.target_name = tn.str();
      try {
        LayoutConfig run_cfg = cfg;
        run_cfg.target_ar = target;
        PipelineResult arcol_run = run_pipeline(ng.graph, run_cfg);
        cell.arcol = arcol_run.metrics;
        if (!baseline_ok) throw ValidationError(baseline_error);
        cell.baseline = baseline.metrics;
        LayoutState scaled = post_scale_baseline(baseline.layout, target);
        cell.post_scaled = report(scaled, d);
        if (sink) {
          sink(cell, "arcol", arcol_run.layout);
          sink(cell, "baseline", baseline.layout);
          sink(cell, "post_scaled", scaled);
        }
      } catch (const std::exception& e) {
        cell.failed = true;
        cell.error = e.what();
      }
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

namespace {

struct Accumulator {
  MetricsReport sum;
  int count = 0;

  void add(const MetricsReport& m) {
    sum.ar += m.ar;
    sum.ksm += m.ksm;
    sum.eld += m.eld;
    sum.nr += m.nr;
    sum.nu += m.nu;
    sum.np += m.np;
    sum.ec += m.ec;
    ++count;
  }
  MetricsReport mean() const {
    MetricsReport m = sum;
    if (count > 0) {
      m.ar /= count;
      m.ksm /= count;
      m.eld /= count;
      m.nr /= count;
      m.nu /= count;
      m.np /= count;
      m.ec /= count;
    }
    return m;
  }
};

}  // namespace

std::string CompareResult::to_csv() const {
  std::ostringstream out;
  out << metrics_csv_header() << "\n";
  std::map<std::string, std::map<std::string, Accumulator>> groups;
  Accumulator avg_arcol, avg_baseline, avg_scaled;
  std::vector<std::string> target_order;
  for (const CompareCell& cell : cells) {
    if (cell.failed) {
      out << cell.graph_name << "," << cell.target_name << ",error,,,,,,,\n";
      continue;
    }
    out << metrics_csv_row(cell.graph_name, cell.target_name, "arcol",
                           cell.arcol)
        << "\n";
    out << metrics_csv_row(cell.graph_name, cell.target_name, "baseline",
                           cell.baseline)
        << "\n";
    out << metrics_csv_row(cell.graph_name, cell.target_name, "post_scaled",
                           cell.post_scaled)
        << "\n";
    if (!groups.count(cell.target_name)) target_order.push_back(cell.target_name);
    groups[cell.target_name]["arcol"].add(cell.arcol);
    groups[cell.target_name]["baseline"].add(cell.baseline);
    groups[cell.target_name]["post_scaled"].add(cell.post_scaled);
    avg_arcol.add(cell.arcol);
    avg_baseline.add(cell.baseline);
    avg_scaled.add(cell.post_scaled);
  }
  for (const std::string& target : target_order) {
    for (const char* method : {"arcol", "baseline", "post_scaled"}) {
      out << metrics_csv_row("mean", target, method,
                             groups[target][method].mean())
          << "\n";
    }
  }
  out << metrics_csv_row("mean", "avg", "arcol", avg_arcol.mean()) << "\n";
  out << metrics_csv_row("mean", "avg", "baseline", avg_baseline.mean()) << "\n";
  out << metrics_csv_row("mean", "avg", "post_scaled", avg_scaled.mean())
      << "\n";
  return out.str();
}

}  // namespace arcol
