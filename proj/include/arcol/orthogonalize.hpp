#ifndef ARCOL_ORTHOGONALIZE_HPP
#define ARCOL_ORTHOGONALIZE_HPP

#include "arcol/graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace arcol {

/// Integer grid positions, one per node (same order as the graph's node
/// list). World position = origin + cell * coords.
struct GridLayout {
  double cell = 40.0;
  Vec2 origin = Vec2::Zero();
  std::vector<Eigen::Vector2i> coords;

  Vec2 world(int index) const {
    return origin + cell * coords[index].cast<double>();
  }
};

/// Rounds every node to the nearest grid cell; occupied cells fall back to
/// a spiral search outward from the rounded cell, candidates ordered by
/// (distance, angle). Nodes are processed in id order.
GridLayout snap_to_grid(const LayoutState& s, double cell);

/// Greedy alignment: an edge whose endpoints differ by exactly one cell on
/// one axis (and are not yet axis-aligned) gets that offset zeroed when
/// the target cell is free. Edges are visited in sorted (u, v) order.
GridLayout align_neighbors(const GridLayout& gl, const Graph& g);

/// One edge route between node centers: straight when aligned, otherwise
/// the less obstructed L elbow, falling back to a Z with the middle
/// segment at the midline. All segments axis-aligned; box avoidance is
/// best effort.
Polyline route_edge(const Vec2& p, const Vec2& q,
                    const std::vector<BoundingBox>& obstacles);

/// Fills LayoutState routes for every edge of g from the grid positions.
LayoutState route_orthogonal(const GridLayout& gl, const Graph& g);

/// Rewrites routes that share a collinear run with an earlier edge onto an
/// adjacent half-grid line (the later edge moves). In-place, bounded
/// number of rounds.
void resolve_collinear_overlaps(std::vector<Polyline>& routes, double cell);

/// Edge piece of the planarized drawing, endpoints given as planar node
/// indices. The route runs from `a` to `b`.
struct PlanarPiece {
  int a = 0;
  int b = 0;
  Polyline route;
  int orig_edge = -1;  // index into the source layout's edge list
};

/// Crossing-free drawing of the core: original nodes first, then one
/// degree-4 dummy node per route crossing. Pieces concatenate back to the
/// original routes (pieces_of_edge holds them in chain order from u).
struct PlanarizedCore {
  std::vector<NodeInfo> nodes;
  PositionMatrix pos;
  std::vector<PlanarPiece> pieces;
  int core_node_count = 0;
  std::vector<std::pair<int, int>> dummy_cross;  // original edge pair per dummy
  std::vector<std::vector<int>> pieces_of_edge;

  Vec2 position(int index) const { return pos.row(index).transpose(); }
  BoundingBox node_box(int index) const {
    return box_at(position(index), nodes[index].w, nodes[index].h);
  }
  int dummy_count() const {
    return static_cast<int>(nodes.size()) - core_node_count;
  }
};

/// Splits every route at its proper crossings with other routes, after
/// perturbing collinear overlaps apart. `cell` scales the perturbation
/// offsets.
PlanarizedCore planarize(const LayoutState& s, double cell = 40.0);

/// Full orthogonalization of a distributed core: normalize, snap, align,
/// normalize and re-snap, route, planarize. Grid pitch is the ideal edge
/// length.
std::pair<LayoutState, PlanarizedCore> orthogonalize_core(
    const LayoutState& core, const LayoutConfig& cfg);

// --dump-grid payload.
std::string grid_to_json(const GridLayout& gl, const Graph& g);

}  // namespace arcol

#endif
