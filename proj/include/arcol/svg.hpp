#ifndef ARCOL_SVG_HPP
#define ARCOL_SVG_HPP

#include "arcol/graph.hpp"

#include <string>

namespace arcol {

struct RenderOptions {
  std::string node_fill = "#dce8f7";
  std::string node_stroke = "#2a4d7f";
  std::string edge_stroke = "#444444";
  bool show_target_frame = false;
  AspectRatioTarget target_ar{1.0};
  double scale = 1.0;  // pixels per layout unit
  double margin = 20.0;
};

/// SVG 1.1 document: one rect per node box, one path per edge route, and
/// optionally a dashed frame with the target ratio circumscribing the
/// drawing.
std::string render_svg(const LayoutState& s, const RenderOptions& opts);

}  // namespace arcol

#endif
