#ifndef ARCOL_REFINE_HPP
#define ARCOL_REFINE_HPP

#include "arcol/graph.hpp"

namespace arcol {

struct RefineReport {
  double ar_before = 1.0;
  double ar_after = 1.0;
  double s_x_applied = 1.0;
  double s_y_applied = 1.0;
  bool skipped = false;  // already within tolerance
  bool capped = false;   // a factor hit the +-cap clamp
};

/// Bounded final rescale toward the target: skipped when the bounding-box
/// aspect ratio is within cfg.refine_tolerance of the target (symmetric in
/// log space); otherwise each axis moves cfg.refine_fraction of the way to
/// the full sqrt correction, clamped to [1-cap, 1+cap], about the box
/// center. Scales positions, routes and node boxes together.
std::pair<LayoutState, RefineReport> final_rescale(const LayoutState& s,
                                                   const LayoutConfig& cfg);

/// Exact anisotropic fit: scales the whole drawing about the box center so
/// the bounding-box aspect ratio equals the target (area-preserving split).
LayoutState force_fit(const LayoutState& s, AspectRatioTarget target);

/// Same transform as force_fit, applied to an unconstrained layout and
/// tagged as the post-scaled baseline in serialization.
LayoutState post_scale_baseline(const LayoutState& s, AspectRatioTarget target);

}  // namespace arcol

#endif
