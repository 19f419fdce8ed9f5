#ifndef ARCOL_DECOMPOSE_HPP
#define ARCOL_DECOMPOSE_HPP

#include "arcol/graph.hpp"

#include <map>
#include <vector>

namespace arcol {

/// A peripheral tree hanging off one core node. `sub_layout` holds
/// positions relative to the root (root at the origin, growing in +y,
/// i.e. "rooted up" on screen); orientation and mirroring are applied at
/// placement time. `routes` are the matching orthogonal edge routes,
/// parallel to `edges`.
struct PeeledTree {
  NodeId root = 0;                  // core node; not in `nodes`
  NodeInfo root_info;               // box size of the root, for the bbox
  std::vector<NodeInfo> nodes;      // tree nodes, sorted by id
  std::vector<Edge> edges;          // includes the root attachment edge
  std::map<NodeId, Vec2> sub_layout;  // excludes root (root is (0,0))
  std::vector<Polyline> routes;
  BoundingBox bbox;  // over root box, node boxes and routes
  double area() const { return bbox.area(); }
};

struct Decomposition {
  Graph core;
  std::vector<PeeledTree> trees;
};

/// Splits a connected graph into a core of minimum degree >= 2 and the
/// peripheral trees peeled off it. Degree-1 nodes are deleted one at a
/// time (smallest id first); each maximal deleted piece becomes one tree
/// rooted at the surviving node it was attached to. When the input is
/// itself a tree the peel stops at two nodes and the endpoint with the
/// larger hanging subtree (ties: smaller id) becomes a one-node core.
Decomposition peel_trees(const Graph& g);

/// Layered drawing of one tree: depth-d nodes sit d levels below the
/// root, siblings are ordered largest-in-the-middle and mirrored
/// outward, and every edge routes as a vertical drop plus a horizontal
/// run. Fills sub_layout, routes and bbox.
void symmetric_tree_layout(PeeledTree& t, double ideal_edge_length);

// Debug serialization for --dump-decomposition.
std::string decomposition_to_json(const Decomposition& dec);

}  // namespace arcol

#endif
