#include "arcol/faces.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace arcol {

bool Face::on_boundary(int node) const {
  return std::find(boundary.begin(), boundary.end(), node) != boundary.end();
}

namespace {

// Half-edge h of piece p: forward means a -> b.
struct HalfEdge {
  int piece = 0;
  bool forward = true;
  int source = 0;
  int target = 0;
  double angle = 0.0;  // direction of the first route segment at source
};

double leave_angle(const Polyline& route, bool forward) {
  const Vec2 d = forward ? Vec2(route[1] - route[0])
                         : Vec2(route[route.size() - 2] - route.back());
  double a = std::atan2(d.y(), d.x());
  if (a < 0) a += 2 * M_PI;
  return a;
}

}  // namespace

std::vector<Face> enumerate_faces(const PlanarizedCore& pc) {
  std::vector<Face> faces;
  const int n_pieces = static_cast<int>(pc.pieces.size());

  if (n_pieces == 0) {
    Face f;
    f.id = 0;
    f.is_external = true;
    for (int i = 0; i < static_cast<int>(pc.nodes.size()); ++i) {
      f.boundary.push_back(i);
    }
    faces.push_back(std::move(f));
    return faces;
  }

  std::vector<HalfEdge> half(2 * n_pieces);
  for (int p = 0; p < n_pieces; ++p) {
    const PlanarPiece& piece = pc.pieces[p];
    half[2 * p] = {p, true, piece.a, piece.b, leave_angle(piece.route, true)};
    half[2 * p + 1] = {p, false, piece.b, piece.a,
                       leave_angle(piece.route, false)};
  }

  // rotation: outgoing half-edges per node, sorted by angle
  std::map<int, std::vector<int>> rotation;
  for (int h = 0; h < 2 * n_pieces; ++h) {
    rotation[half[h].source].push_back(h);
  }
  for (auto& [node, out] : rotation) {
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      if (half[a].angle != half[b].angle) return half[a].angle < half[b].angle;
      return a < b;
    });
  }

  auto next_in_face = [&](int h) {
    const int twin = h ^ 1;
    const auto& out = rotation.at(half[twin].source);
    const auto it = std::find(out.begin(), out.end(), twin);
    const std::size_t k = it - out.begin();
    return out[(k + out.size() - 1) % out.size()];  // rotation predecessor
  };

  std::vector<int> face_of(2 * n_pieces, -1);
  for (int start = 0; start < 2 * n_pieces; ++start) {
    if (face_of[start] >= 0) continue;
    Face f;
    f.id = static_cast<int>(faces.size());
    int h = start;
    do {
      face_of[h] = f.id;
      f.walk.emplace_back(half[h].piece, half[h].forward);
      if (f.boundary.empty() || f.boundary.back() != half[h].source) {
        f.boundary.push_back(half[h].source);
      }
      h = next_in_face(h);
    } while (h != start);
    if (f.boundary.size() > 1 && f.boundary.front() == f.boundary.back()) {
      f.boundary.pop_back();
    }
    faces.push_back(std::move(f));
  }

  for (Face& f : faces) {
    f.signed_area = polygon_signed_area(face_polygon(f, pc));
  }
  // every directed edge appears once over all walks, so the areas sum to
  // zero; the external face carries the negative total of the others
  int external = 0;
  for (std::size_t i = 1; i < faces.size(); ++i) {
    if (faces[i].signed_area < faces[external].signed_area) {
      external = static_cast<int>(i);
    }
  }
  faces[external].is_external = true;

  // isolated nodes belong to the external face boundary
  std::vector<char> seen(pc.nodes.size(), 0);
  for (const PlanarPiece& p : pc.pieces) seen[p.a] = seen[p.b] = 1;
  for (std::size_t i = 0; i < pc.nodes.size(); ++i) {
    if (!seen[i]) faces[external].boundary.push_back(static_cast<int>(i));
  }
  return faces;
}

Polyline face_polygon(const Face& f, const PlanarizedCore& pc) {
  Polyline poly;
  for (const auto& [piece, forward] : f.walk) {
    Polyline part = pc.pieces[piece].route;
    if (!forward) std::reverse(part.begin(), part.end());
    // drop the closing point of each part; the next part repeats it
    poly.insert(poly.end(), part.begin(), part.end() - 1);
  }
  return poly;
}

int face_at(const std::vector<Face>& faces, const PlanarizedCore& pc,
            const Vec2& probe) {
  int external = 0;
  for (const Face& f : faces) {
    if (f.is_external) {
      external = f.id;
      continue;
    }
    if (winding_number(face_polygon(f, pc), probe) != 0) return f.id;
  }
  return external;
}

}  // namespace arcol
