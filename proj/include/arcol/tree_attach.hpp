#ifndef ARCOL_TREE_ATTACH_HPP
#define ARCOL_TREE_ATTACH_HPP

#include "arcol/decompose.hpp"
#include "arcol/faces.hpp"
#include "arcol/graph.hpp"
#include "arcol/orthogonalize.hpp"

#include <utility>
#include <vector>

namespace arcol {

/// Obstacle geometry a placement is scored against: every node box, every
/// route segment, and the drawing bounds.
struct DrawingView {
  std::vector<BoundingBox> boxes;
  std::vector<Segment> segments;
  BoundingBox bbox;
};

DrawingView make_view(const LayoutState& s);

/// One way of putting a tree back: a face, the direction the tree grows
/// from its root, and whether it is mirrored across the growth axis.
struct PlacementCandidate {
  const PeeledTree* tree = nullptr;
  int face_id = 0;
  Dir orientation = Dir::S;
  bool flip = false;
  Vec2 root_pos = Vec2::Zero();
  BoundingBox root_box;
  int root_box_index = -1;  // the root's own box inside the view
};

struct CostBreakdown {
  double c_x = 0.0;
  double c_y = 0.0;
  double w_x = 1.0;
  double w_y = 1.0;
  double c_space = 0.0;
  double ar_proj = 1.0;
  double c_ar = 0.0;
  double lambda = 0.0;
  double omega = 0.0;
  double c_final = 0.0;
};

// Maps a point of the canonical sub-layout (growing +y) into the frame of
// the oriented, optionally mirrored placement.
Vec2 orient_offset(const Vec2& canonical, Dir dir, bool flip);

// Tree bbox after orientation/flip, still relative to the root.
BoundingBox oriented_tree_bbox(const PeeledTree& t, Dir dir, bool flip);

/// Growth-axis overflow past the face's free span at the root, plus the
/// lateral overflow measured per side from a probe just inside the face.
/// Needed extents are the oriented tree bbox padded by a quarter edge
/// length on each side.
std::pair<double, double> expansion_cost(const PlacementCandidate& cand,
                                         const DrawingView& view,
                                         double ideal_edge_length);

/// Aspect ratio of the union of the current bounds and the placed tree
/// bbox, grown by the expansion amounts.
double projected_ar(const PlacementCandidate& cand, const DrawingView& view,
                    double ideal_edge_length);

/// Pure cost assembly from measured quantities: discounted space cost,
/// log-squared aspect penalty, leverage min(1, (A_tree/A_core)^beta) and
/// the edge-length-proportional weight omega.
CostBreakdown assemble_cost(double c_x, double c_y, double ar_proj,
                            double a_tree, double a_core,
                            const LayoutConfig& cfg);

CostBreakdown placement_cost(const PlacementCandidate& cand,
                             const DrawingView& view, const LayoutConfig& cfg);

// --dump-placements rows.
struct PlacementRecord {
  NodeId tree_root = 0;
  int face_id = 0;
  Dir orientation = Dir::S;
  bool flip = false;
  CostBreakdown cost;
  bool chosen = false;
};

/// Greedy reinsertion: trees in descending bbox area (ties by root id),
/// every admissible (face, orientation, flip) scored, cheapest applied
/// with its expansion, bbox updated before the next tree. Dummy crossing
/// nodes disappear from the result; piece routes are stitched back into
/// whole-edge routes.
LayoutState attach_trees(const Decomposition& dec, const LayoutState& core,
                         const PlanarizedCore& pc, const LayoutConfig& cfg,
                         std::vector<PlacementRecord>* log = nullptr);

/// Opens a gap: everything strictly beyond `line` on `axis` moves by
/// `amount` (>= 0), route points included, which keeps segments
/// axis-aligned and box disjointness intact.
LayoutState apply_expansion(const LayoutState& s, Axis axis, double line,
                            double amount);

/// Per-axis greedy compaction (slide node groups inward down to one grid
/// pitch while boxes stay disjoint), then a full re-route of every edge.
LayoutState compact_and_route(const LayoutState& s, double cell = 40.0);

std::string placements_to_json(const std::vector<PlacementRecord>& log);

}  // namespace arcol

#endif
