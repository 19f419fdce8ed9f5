#include "arcol/svg.hpp"

#include "arcol/io.hpp"

#include <sstream>

namespace arcol {

std::string render_svg(const LayoutState& s, const RenderOptions& opts) {
  if (!(opts.scale > 0.0)) throw ValidationError("render scale must be > 0");
  const BoundingBox box = bounding_box(s);

  // frame with the target ratio, circumscribing the drawing
  double frame_w = box.width();
  double frame_h = box.height();
  if (opts.show_target_frame) {
    if (frame_w / std::max(frame_h, 1e-12) > opts.target_ar.value) {
      frame_h = frame_w / opts.target_ar.value;
    } else {
      frame_w = frame_h * opts.target_ar.value;
    }
  }
  const Vec2 center = box.center();
  const double min_x = std::min(box.min_x, center.x() - frame_w / 2.0);
  const double min_y = std::min(box.min_y, center.y() - frame_h / 2.0);

  auto X = [&](double x) { return (x - min_x) * opts.scale + opts.margin; };
  auto Y = [&](double y) { return (y - min_y) * opts.scale + opts.margin; };

  const double width = std::max(box.width(), frame_w) * opts.scale +
                       2 * opts.margin;
  const double height = std::max(box.height(), frame_h) * opts.scale +
                        2 * opts.margin;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << format_coord(width) << "\" height=\"" << format_coord(height)
      << "\">\n";

  if (opts.show_target_frame) {
    out << "  <rect x=\"" << format_coord(X(center.x() - frame_w / 2.0))
        << "\" y=\"" << format_coord(Y(center.y() - frame_h / 2.0))
        << "\" width=\"" << format_coord(frame_w * opts.scale)
        << "\" height=\"" << format_coord(frame_h * opts.scale)
        << "\" fill=\"none\" stroke=\"#b04a4a\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (int e = 0; e < s.graph.edge_count(); ++e) {
    const Polyline route = s.route_or_straight(e);
    out << "  <path d=\"M " << format_coord(X(route[0].x())) << " "
        << format_coord(Y(route[0].y()));
    for (std::size_t k = 1; k < route.size(); ++k) {
      out << " L " << format_coord(X(route[k].x())) << " "
          << format_coord(Y(route[k].y()));
    }
    out << "\" fill=\"none\" stroke=\"" << opts.edge_stroke << "\"/>\n";
  }

  for (int i = 0; i < s.graph.node_count(); ++i) {
    const BoundingBox nb = s.node_box(i);
    out << "  <rect x=\"" << format_coord(X(nb.min_x)) << "\" y=\""
        << format_coord(Y(nb.min_y)) << "\" width=\""
        << format_coord(nb.width() * opts.scale) << "\" height=\""
        << format_coord(nb.height() * opts.scale) << "\" fill=\""
        << opts.node_fill << "\" stroke=\"" << opts.node_stroke << "\"/>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace arcol
