#include "arcol/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace arcol {

double variance_epsilon(double ideal_edge_length) {
  return 1e-9 * ideal_edge_length * ideal_edge_length;
}

SpreadStats spread_stats(const PositionMatrix& pos, double ideal_edge_length) {
  SpreadStats st;
  const auto n = pos.rows();
  st.mean_x = pos.col(0).mean();
  st.mean_y = pos.col(1).mean();
  st.var_x = (pos.col(0).array() - st.mean_x).square().sum() / double(n);
  st.var_y = (pos.col(1).array() - st.mean_y).square().sum() / double(n);
  st.sigma_x = std::sqrt(st.var_x);
  st.sigma_y = std::sqrt(st.var_y);
  const double eps = variance_epsilon(ideal_edge_length);
  st.degenerate = st.var_x < eps || st.var_y < eps;
  st.ar_proxy =
      std::sqrt(std::max(st.var_x, eps) / std::max(st.var_y, eps));
  return st;
}

SpreadStats spread_stats(const LayoutState& s, double ideal_edge_length) {
  return spread_stats(s.pos, ideal_edge_length);
}

void normalize_ar(PositionMatrix& pos, AspectRatioTarget target,
                  double ideal_edge_length) {
  if (pos.rows() < 2) return;
  const SpreadStats st = spread_stats(pos, ideal_edge_length);
  if (st.degenerate) return;
  const double s_x = std::pow(target.value / st.ar_proxy, 0.25);
  const double s_y = 1.0 / s_x;
  pos.col(0) = (s_x * (pos.col(0).array() - st.mean_x) + st.mean_x).matrix();
  pos.col(1) = (s_y * (pos.col(1).array() - st.mean_y) + st.mean_y).matrix();
}

LayoutState normalize_ar(const LayoutState& s, AspectRatioTarget target,
                         double ideal_edge_length) {
  LayoutState out = s;
  normalize_ar(out.pos, target, ideal_edge_length);
  return out;
}

double stress(const PositionMatrix& pos, const Eigen::MatrixXd& d) {
  double total = 0.0;
  const auto n = pos.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dist = (pos.row(i) - pos.row(j)).norm();
      const double ideal = d(i, j);
      const double diff = dist - ideal;
      total += diff * diff / (ideal * ideal);
    }
  }
  return total;
}

double stress(const LayoutState& s, const Eigen::MatrixXd& d) {
  return stress(s.pos, d);
}

void stress_minimize_step(PositionMatrix& pos, const Eigen::MatrixXd& d) {
  const auto n = pos.rows();
  if (n < 2) return;
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec2 acc = Vec2::Zero();
    double wsum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double ideal = d(i, j);
      const double w = 1.0 / (ideal * ideal);
      const Vec2 delta = (pos.row(i) - pos.row(j)).transpose();
      const double dist = delta.norm();
      Vec2 targetpt = pos.row(j).transpose();
      if (dist > 0.0) targetpt += (ideal / dist) * delta;
      acc += w * targetpt;
      wsum += w;
    }
    pos.row(i) = (acc / wsum).transpose();
  }
}

LayoutState stress_minimize_step(const LayoutState& s,
                                 const Eigen::MatrixXd& d) {
  LayoutState out = s;
  stress_minimize_step(out.pos, d);
  return out;
}

namespace {

constexpr double kOverlapTol = 1e-9;
constexpr int kMaxOverlapSweeps = 50;

int count_overlaps(const LayoutState& s) {
  int count = 0;
  const int n = s.graph.node_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (boxes_overlap(s.node_box(i), s.node_box(j), kOverlapTol)) ++count;
    }
  }
  return count;
}

}  // namespace

bool overlap_sweep(LayoutState& s) {
  bool moved = false;
  const int n = s.graph.node_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const BoundingBox a = s.node_box(i);
      const BoundingBox b = s.node_box(j);
      if (!boxes_overlap(a, b, kOverlapTol)) continue;
      const double dx = s.pos(j, 0) - s.pos(i, 0);
      const double dy = s.pos(j, 1) - s.pos(i, 1);
      const double pen_x = (a.width() + b.width()) / 2.0 - std::abs(dx);
      const double pen_y = (a.height() + b.height()) / 2.0 - std::abs(dy);
      if (pen_x <= pen_y) {
        const double dir = dx > 0.0 ? 1.0 : (dx < 0.0 ? -1.0 : 1.0);
        s.pos(i, 0) -= dir * pen_x / 2.0;
        s.pos(j, 0) += dir * pen_x / 2.0;
      } else {
        const double dir = dy > 0.0 ? 1.0 : (dy < 0.0 ? -1.0 : 1.0);
        s.pos(i, 1) -= dir * pen_y / 2.0;
        s.pos(j, 1) += dir * pen_y / 2.0;
      }
      moved = true;
    }
  }
  return moved;
}

LayoutState remove_overlaps(const LayoutState& s, OverlapReport* report) {
  LayoutState out = s;
  int sweeps = 0;
  while (sweeps < kMaxOverlapSweeps && overlap_sweep(out)) ++sweeps;
  if (report) {
    report->sweeps = sweeps;
    report->residual_pairs = count_overlaps(out);
  }
  return out;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits, so the stream does not
// depend on the standard library's distribution implementation.
double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

RunResult single_run(const Graph& core, const LayoutConfig& cfg,
                     const Eigen::MatrixXd& d, int restart,
                     const TraceSink& trace) {
  RunResult r;
  r.restart_index = restart;
  r.layout = make_layout(core, Stage::distributed);
  const int n = core.node_count();

  std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(restart));
  const double side = std::sqrt(double(n)) * cfg.ideal_edge_length;
  for (int i = 0; i < n; ++i) {
    r.layout.pos(i, 0) = uniform01(rng) * side;
    r.layout.pos(i, 1) = uniform01(rng) * side;
  }

  double prev = stress(r.layout, d);
  int stable = 0;
  for (int iter = 0; iter < cfg.max_stress_iterations; ++iter) {
    stress_minimize_step(r.layout.pos, d);
    if (!cfg.baseline) {
      normalize_ar(r.layout.pos, cfg.target_ar, cfg.ideal_edge_length);
    }
    const double cur = stress(r.layout, d);
    r.iterations = iter + 1;
    if (trace) {
      trace({restart, iter,
             cur, spread_stats(r.layout, cfg.ideal_edge_length).ar_proxy});
    }
    const double rel = std::abs(prev - cur) / std::max(prev, 1e-12);
    stable = rel < cfg.stress_tolerance ? stable + 1 : 0;
    prev = cur;
    if (stable >= 3) break;
  }

  // Overlap removal with the normalization interleaved after every sweep,
  // so the aspect ratio survives the separation moves.
  for (int sweep = 0; sweep < kMaxOverlapSweeps; ++sweep) {
    const bool moved = overlap_sweep(r.layout);
    if (!cfg.baseline) {
      normalize_ar(r.layout.pos, cfg.target_ar, cfg.ideal_edge_length);
    }
    if (!moved && count_overlaps(r.layout) == 0) break;
  }
  r.residual_overlaps = count_overlaps(r.layout);

  r.final_stress = stress(r.layout, d);
  r.final_ar = n >= 2 ? spread_stats(r.layout, cfg.ideal_edge_length).ar_proxy
                      : 1.0;
  r.ar_error = std::abs(std::log(r.final_ar / cfg.target_ar.value));
  return r;
}

}  // namespace

RunResult distribution_phase(const Graph& core, const LayoutConfig& cfg,
                             const TraceSink& trace) {
  cfg.validate();
  core.validate_connected();
  if (core.node_count() == 0) throw ValidationError("empty core");

  if (core.node_count() == 1) {
    RunResult r;
    r.layout = make_layout(core, Stage::distributed);
    r.final_ar = 1.0;
    r.ar_error = std::abs(std::log(1.0 / cfg.target_ar.value));
    return r;
  }

  const Eigen::MatrixXd d = graph_distances(core, cfg.ideal_edge_length);
  RunResult best;
  bool have_best = false;
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    RunResult r = single_run(core, cfg, d, restart, trace);
    const bool better =
        !have_best ||
        (cfg.baseline
             ? r.final_stress < best.final_stress
             : std::tie(r.ar_error, r.final_stress) <
                   std::tie(best.ar_error, best.final_stress));
    if (better) {
      best = std::move(r);
      have_best = true;
    }
  }
  return best;
}

}  // namespace arcol
