#include "arcol/refine.hpp"

#include <cmath>

namespace arcol {

namespace {

// Anisotropic scale of the whole drawing (positions, routes, box sizes)
// about the bounding-box center. Box sizes scale too: the baseline
// comparison stretches the drawing as an image would be stretched.
LayoutState scale_about_center(const LayoutState& s, double s_x, double s_y) {
  LayoutState out = s;
  const Vec2 c = bounding_box(s).center();
  for (Eigen::Index i = 0; i < out.pos.rows(); ++i) {
    out.pos(i, 0) = c.x() + s_x * (out.pos(i, 0) - c.x());
    out.pos(i, 1) = c.y() + s_y * (out.pos(i, 1) - c.y());
  }
  for (Polyline& route : out.routes) {
    for (Vec2& p : route) {
      p.x() = c.x() + s_x * (p.x() - c.x());
      p.y() = c.y() + s_y * (p.y() - c.y());
    }
  }
  for (int i = 0; i < out.graph.node_count(); ++i) {
    NodeInfo& n = out.graph.node(out.graph.nodes()[i].id);
    n.w *= s_x;
    n.h *= s_y;
  }
  return out;
}

}  // namespace

std::pair<LayoutState, RefineReport> final_rescale(const LayoutState& s,
                                                   const LayoutConfig& cfg) {
  RefineReport report;
  report.ar_before = bounding_box(s).aspect_ratio();
  const double target = cfg.target_ar.value;

  if (std::abs(std::log(report.ar_before / target)) <=
      std::log(1.0 + cfg.refine_tolerance)) {
    report.ar_after = report.ar_before;
    report.skipped = true;
    LayoutState out = s;
    out.stage = Stage::refined;
    return {std::move(out), report};
  }

  const double s_x_full = std::sqrt(target / report.ar_before);
  const double s_y_full = 1.0 / s_x_full;
  const double lo = 1.0 - cfg.refine_cap;
  const double hi = 1.0 + cfg.refine_cap;
  double s_x = 1.0 + cfg.refine_fraction * (s_x_full - 1.0);
  double s_y = 1.0 + cfg.refine_fraction * (s_y_full - 1.0);
  report.capped = s_x < lo || s_x > hi || s_y < lo || s_y > hi;
  s_x = std::clamp(s_x, lo, hi);
  s_y = std::clamp(s_y, lo, hi);
  report.s_x_applied = s_x;
  report.s_y_applied = s_y;

  LayoutState out = scale_about_center(s, s_x, s_y);
  out.stage = Stage::refined;
  report.ar_after = bounding_box(out).aspect_ratio();
  return {std::move(out), report};
}

LayoutState force_fit(const LayoutState& s, AspectRatioTarget target) {
  const double ar = bounding_box(s).aspect_ratio();
  const double s_x = std::sqrt(target.value / ar);
  LayoutState out = scale_about_center(s, s_x, 1.0 / s_x);
  out.stage = Stage::refined;
  return out;
}

LayoutState post_scale_baseline(const LayoutState& s,
                                AspectRatioTarget target) {
  LayoutState out = force_fit(s, target);
  out.post_scaled_baseline = true;
  return out;
}

}  // namespace arcol
