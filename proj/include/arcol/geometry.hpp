#ifndef ARCOL_GEOMETRY_HPP
#define ARCOL_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace arcol {

using Vec2 = Eigen::Vector2d;

// Node positions, one row per node, columns (x, y). Y grows downward
// (screen convention); SVG emission is then a plain affine map.
using PositionMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;

using Polyline = std::vector<Vec2>;

enum class Axis { X = 0, Y = 1 };

// Compass direction a tree grows in from its root. Order matters: it is
// the candidate tie-break order.
enum class Dir { N = 0, E = 1, S = 2, W = 3 };

inline Vec2 dir_vector(Dir d) {
  switch (d) {
    case Dir::N: return {0.0, -1.0};
    case Dir::E: return {1.0, 0.0};
    case Dir::S: return {0.0, 1.0};
    default: return {-1.0, 0.0};
  }
}

inline const char* dir_name(Dir d) {
  static const char* names[] = {"N", "E", "S", "W"};
  return names[static_cast<int>(d)];
}

struct BoundingBox {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  bool empty() const { return min_x > max_x; }
  double width() const { return empty() ? 0.0 : max_x - min_x; }
  double height() const { return empty() ? 0.0 : max_y - min_y; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {(min_x + max_x) / 2.0, (min_y + max_y) / 2.0}; }

  // Width / height. Degenerate heights give +inf rather than a NaN trap;
  // callers that care guard on width()/height() themselves.
  double aspect_ratio() const {
    return height() > 0.0 ? width() / height()
                          : std::numeric_limits<double>::infinity();
  }

  void expand(const Vec2& p) {
    min_x = std::min(min_x, p.x());
    max_x = std::max(max_x, p.x());
    min_y = std::min(min_y, p.y());
    max_y = std::max(max_y, p.y());
  }
  void expand(const BoundingBox& b) {
    if (b.empty()) return;
    expand(Vec2{b.min_x, b.min_y});
    expand(Vec2{b.max_x, b.max_y});
  }

  BoundingBox translated(const Vec2& t) const {
    return {min_x + t.x(), min_y + t.y(), max_x + t.x(), max_y + t.y()};
  }

  bool contains(const Vec2& p) const {
    return p.x() >= min_x && p.x() <= max_x && p.y() >= min_y && p.y() <= max_y;
  }
};

inline BoundingBox box_at(const Vec2& center, double w, double h) {
  return {center.x() - w / 2.0, center.y() - h / 2.0, center.x() + w / 2.0,
          center.y() + h / 2.0};
}

inline bool boxes_overlap(const BoundingBox& a, const BoundingBox& b,
                          double tol = 0.0) {
  return a.min_x < b.max_x - tol && b.min_x < a.max_x - tol &&
         a.min_y < b.max_y - tol && b.min_y < a.max_y - tol;
}

struct Segment {
  Vec2 a;
  Vec2 b;

  bool horizontal() const { return a.y() == b.y(); }
  bool vertical() const { return a.x() == b.x(); }
  bool axis_aligned() const { return horizontal() || vertical(); }
  double length() const { return (b - a).norm(); }
};

// Proper crossing: the segments intersect transversally in a single point
// interior to both. Touching endpoints and collinear overlaps do not count.
// Axis-aligned pairs are decided by coordinate comparisons only, so the
// result is exact and invariant under any monotone per-axis rescaling.
std::optional<Vec2> proper_crossing(const Segment& s, const Segment& t);

// True if the closed segment passes through the interior of the box.
bool segment_intersects_box(const Segment& s, const BoundingBox& b);

// Collinear axis-aligned segments sharing a sub-interval of positive length.
bool collinear_overlap(const Segment& s, const Segment& t);

// Signed area of a closed polygon (shoelace). With y growing downward a
// clockwise-on-screen walk has positive sign.
double polygon_signed_area(const Polyline& poly);

// Winding number of a closed polyline walk around p (0 = outside).
int winding_number(const Polyline& poly, const Vec2& p);

double polyline_length(const Polyline& line);

}  // namespace arcol

#endif
