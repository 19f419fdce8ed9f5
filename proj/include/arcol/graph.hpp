#ifndef ARCOL_GRAPH_HPP
#define ARCOL_GRAPH_HPP

#include "arcol/geometry.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arcol {

using NodeId = int;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NodeInfo {
  NodeId id = 0;
  double w = 0.0;  // box width in layout units
  double h = 0.0;
  bool dummy = false;  // crossing node introduced by planarization
};

// Undirected edge, endpoints stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId a, NodeId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Simple undirected graph with per-node box sizes. Nodes are kept sorted
/// by id; edges keep insertion order (routes in a LayoutState are a
/// parallel array). Value type, cheap to copy at the sizes this library
/// targets.
class Graph {
 public:
  void add_node(NodeId id, double w, double h, bool dummy = false);
  // Inserts the normalized edge; returns false if it was already present.
  bool add_edge(NodeId a, NodeId b);
  void remove_node(NodeId id);  // also drops incident edges

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<NodeInfo>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_node(NodeId id) const { return index_.count(id) > 0; }
  bool has_edge(NodeId a, NodeId b) const;

  // Dense index of a node id (nodes are sorted by id).
  int index_of(NodeId id) const;
  const NodeInfo& node(NodeId id) const { return nodes_[index_of(id)]; }
  NodeInfo& node(NodeId id) { return nodes_[index_of(id)]; }

  const std::vector<int>& neighbors(int index) const {
    return adjacency_[index];
  }
  int degree(int index) const {
    return static_cast<int>(adjacency_[index].size());
  }

  bool connected() const;
  // Keeps only the largest connected component (ties by smallest node id).
  void restrict_to_largest_component();

  // Throws ValidationError when disconnected.
  void validate_connected() const;

 private:
  void rebuild_adjacency();

  std::vector<NodeInfo> nodes_;            // sorted by id
  std::vector<Edge> edges_;                // insertion order
  std::unordered_map<NodeId, int> index_;  // id -> position in nodes_
  std::vector<std::vector<int>> adjacency_;  // by node index, sorted
};

// Target width/height ratio, e.g. 16:9 -> 1.777...
struct AspectRatioTarget {
  double value = 1.0;

  explicit AspectRatioTarget(double v = 1.0) : value(v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("aspect ratio target must be positive and finite");
    }
  }
};

// Parses "16:9" or "1.777" forms.
AspectRatioTarget parse_aspect_ratio(const std::string& text);

struct LayoutConfig {
  AspectRatioTarget target_ar{1.0};
  double ideal_edge_length = 40.0;
  int restarts = 5;
  std::uint64_t seed = 0;
  double beta = 0.75;
  double discount = 0.85;
  double omega_factor = 1.0;  // omega = omega_factor * ideal_edge_length
  double refine_tolerance = 0.15;
  double refine_fraction = 0.30;
  double refine_cap = 0.20;
  bool force_fit = false;
  int max_stress_iterations = 200;
  double stress_tolerance = 1e-4;
  // Disables the anisotropic normalization, the aspect-ratio placement
  // cost (lambda = 0, weights (1,1)) and the final refinement. Used for
  // the unconstrained comparison runs.
  bool baseline = false;

  double omega() const { return omega_factor * ideal_edge_length; }
  double default_node_size() const { return ideal_edge_length / 2.0; }

  void validate() const;
};

enum class Stage { distributed, orthogonal, attached, refined };

const char* stage_name(Stage s);
Stage stage_from_name(const std::string& name);

/// Positions, edge routes and the originating graph at one pipeline stage.
/// Row i of `pos` belongs to graph.nodes()[i]; routes[e] belongs to
/// graph.edges()[e] and may be empty before routing (drawn as a straight
/// segment).
struct LayoutState {
  Graph graph;
  PositionMatrix pos;
  std::vector<Polyline> routes;
  Stage stage = Stage::distributed;
  bool post_scaled_baseline = false;

  Vec2 position(int index) const { return pos.row(index).transpose(); }
  void set_position(int index, const Vec2& p) { pos.row(index) = p.transpose(); }

  BoundingBox node_box(int index) const {
    const NodeInfo& n = graph.nodes()[index];
    return box_at(position(index), n.w, n.h);
  }

  // Route of edge e; synthesizes the straight segment when unset.
  Polyline route_or_straight(int e) const;

  void translate(const Vec2& t);
};

LayoutState make_layout(const Graph& g, Stage stage = Stage::distributed);

// Tight box over all node boxes and route points. Throws ValidationError
// on an empty layout.
BoundingBox bounding_box(const LayoutState& s);

// Shortest-path hop distances scaled by the ideal edge length. Throws
// ValidationError when some pair is unreachable.
Eigen::MatrixXd graph_distances(const Graph& g, double ideal_edge_length);

}  // namespace arcol

#endif
