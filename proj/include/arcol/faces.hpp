#ifndef ARCOL_FACES_HPP
#define ARCOL_FACES_HPP

#include "arcol/orthogonalize.hpp"

#include <vector>

namespace arcol {

/// One face of the planarized drawing: the orbit of half-edges traced by
/// always taking the rotation predecessor of the twin. Bounded faces come
/// out with positive signed area under the y-down convention; the external
/// face is the most negative one. `walk` lists (piece, forward) steps, so
/// the polygon can be rebuilt from live geometry after nodes move.
struct Face {
  int id = 0;
  std::vector<std::pair<int, bool>> walk;
  std::vector<int> boundary;  // planar node indices, walk order, dedup
  bool is_external = false;
  double signed_area = 0.0;

  bool on_boundary(int node) const;
};

std::vector<Face> enumerate_faces(const PlanarizedCore& pc);

// Boundary polygon from the current piece geometry (bends included).
Polyline face_polygon(const Face& f, const PlanarizedCore& pc);

// Index of the face containing the probe point; boundary points are
// unreliable, nudge probes off edges first.
int face_at(const std::vector<Face>& faces, const PlanarizedCore& pc,
            const Vec2& probe);

}  // namespace arcol

#endif
