#include "arcol/decompose.hpp"

#include "arcol/io.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace arcol {

namespace {

// Subtree sizes of a tree when the edge (a, b) is cut: returns the number
// of nodes on a's side.
int side_size(const Graph& g, NodeId a, NodeId b) {
  std::set<NodeId> seen{a, b};
  std::deque<NodeId> queue{a};
  int count = 1;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (int vi : g.neighbors(g.index_of(u))) {
      const NodeId v = g.nodes()[vi].id;
      if (!seen.count(v)) {
        seen.insert(v);
        ++count;
        queue.push_back(v);
      }
    }
  }
  return count;
}

}  // namespace

Decomposition peel_trees(const Graph& g) {
  g.validate_connected();

  std::map<NodeId, int> degree;
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const NodeInfo& n : g.nodes()) degree[n.id] = 0;
  for (const Edge& e : g.edges()) {
    ++degree[e.u];
    ++degree[e.v];
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  std::set<NodeId> alive;
  for (const NodeInfo& n : g.nodes()) alive.insert(n.id);
  std::set<NodeId> peel_queue;  // current degree-1 nodes, ordered by id
  for (const auto& [id, d] : degree) {
    if (d == 1) peel_queue.insert(id);
  }

  std::vector<NodeId> removed;
  while (alive.size() > 2 && !peel_queue.empty()) {
    const NodeId u = *peel_queue.begin();
    peel_queue.erase(peel_queue.begin());
    alive.erase(u);
    removed.push_back(u);
    for (NodeId v : adj[u]) {
      if (!alive.count(v)) continue;
      if (--degree[v] == 1) peel_queue.insert(v);
      if (degree[v] != 1) peel_queue.erase(v);
    }
  }

  // Tree input: the peel ran down to two adjacent degree-1 nodes. The
  // endpoint with the larger hanging subtree stays as a one-node core.
  if (alive.size() == 2 && !peel_queue.empty()) {
    const NodeId a = *alive.begin();
    const NodeId b = *std::next(alive.begin());
    if (degree[a] == 1 && degree[b] == 1) {
      const int sa = side_size(g, a, b);
      const int sb = g.node_count() - sa;
      const NodeId out = sa > sb ? b : (sb > sa ? a : std::max(a, b));
      alive.erase(out);
      removed.push_back(out);
    }
  }

  Decomposition dec;
  for (const NodeInfo& n : g.nodes()) {
    if (alive.count(n.id)) dec.core.add_node(n.id, n.w, n.h, n.dummy);
  }
  for (const Edge& e : g.edges()) {
    if (alive.count(e.u) && alive.count(e.v)) dec.core.add_edge(e.u, e.v);
  }

  // Group removed nodes into connected pieces; each piece hangs off
  // exactly one surviving node, its root.
  std::set<NodeId> unassigned(removed.begin(), removed.end());
  std::map<std::pair<NodeId, NodeId>, PeeledTree> trees;  // (root, min id)
  while (!unassigned.empty()) {
    const NodeId start = *unassigned.begin();
    std::set<NodeId> piece{start};
    std::deque<NodeId> queue{start};
    NodeId root = -1;
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : adj[u]) {
        if (alive.count(v)) {
          root = v;
        } else if (!piece.count(v)) {
          piece.insert(v);
          queue.push_back(v);
        }
      }
    }
    PeeledTree t;
    t.root = root;
    t.root_info = g.nodes()[g.index_of(root)];
    for (NodeId id : piece) {
      t.nodes.push_back(g.nodes()[g.index_of(id)]);
      unassigned.erase(id);
    }
    std::sort(t.nodes.begin(), t.nodes.end(),
              [](const NodeInfo& a, const NodeInfo& b) { return a.id < b.id; });
    for (const Edge& e : g.edges()) {
      const bool u_in = piece.count(e.u) > 0;
      const bool v_in = piece.count(e.v) > 0;
      if ((u_in && v_in) || (u_in && e.v == root) || (v_in && e.u == root)) {
        t.edges.push_back(e);
      }
    }
    std::sort(t.edges.begin(), t.edges.end());
    trees[{root, *piece.begin()}] = std::move(t);
  }
  for (auto& [key, t] : trees) dec.trees.push_back(std::move(t));
  return dec;
}

namespace {

struct TreeShape {
  // Extent of the packed subtree relative to its own root's x.
  double lo = 0.0;
  double hi = 0.0;
  std::map<NodeId, Vec2> positions;  // relative to the subtree root
};

struct TreeBuilder {
  std::map<NodeId, std::vector<NodeId>> children;
  std::map<NodeId, int> subtree_size;
  double slot = 0.0;   // horizontal pitch per leaf
  double pitch = 0.0;  // vertical distance per depth level

  int compute_sizes(NodeId v) {
    int s = 1;
    for (NodeId c : children[v]) s += compute_sizes(c);
    return subtree_size[v] = s;
  }

  TreeShape layout(NodeId v) const {
    TreeShape shape;
    shape.lo = -slot / 2.0;
    shape.hi = slot / 2.0;
    auto kids = children.at(v);
    if (kids.empty()) return shape;

    std::sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) {
      const int sa = subtree_size.at(a);
      const int sb = subtree_size.at(b);
      return sa != sb ? sa > sb : a < b;
    });

    // Largest in the middle, then alternately right and left; the
    // left-hand shapes are mirrored so symmetric families reflect
    // exactly.
    std::vector<NodeId> order;  // left-to-right
    for (std::size_t k = kids.size(); k-- > 1;) {
      if (k % 2 == 0) order.push_back(kids[k]);
    }
    order.push_back(kids[0]);
    for (std::size_t k = 1; k < kids.size(); k += 2) order.push_back(kids[k]);

    std::vector<TreeShape> shapes;
    std::vector<double> offsets;
    double cursor = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      TreeShape cs = layout(order[k]);
      if (k < order.size() / 2) {  // left half faces outward: mirror
        for (auto& [id, p] : cs.positions) p.x() = -p.x();
        std::swap(cs.lo, cs.hi);
        cs.lo = -cs.lo;
        cs.hi = -cs.hi;
      }
      const double off = k == 0 ? 0.0 : cursor - cs.lo;
      cursor = off + cs.hi;
      offsets.push_back(off);
      shapes.push_back(std::move(cs));
    }
    const double span_lo = offsets.front() + shapes.front().lo;
    const double span_hi = offsets.back() + shapes.back().hi;
    const double shift = -(span_lo + span_hi) / 2.0;  // parent over the middle

    for (std::size_t k = 0; k < order.size(); ++k) {
      const double cx = offsets[k] + shift;
      shape.positions[order[k]] = {cx, pitch};
      for (const auto& [id, p] : shapes[k].positions) {
        shape.positions[id] = Vec2{cx + p.x(), pitch + p.y()};
      }
    }
    shape.lo = std::min(shape.lo, span_lo + shift);
    shape.hi = std::max(shape.hi, span_hi + shift);
    return shape;
  }
};

}  // namespace

void symmetric_tree_layout(PeeledTree& t, double ideal_edge_length) {
  TreeBuilder builder;
  std::set<NodeId> in_tree;
  for (const NodeInfo& n : t.nodes) in_tree.insert(n.id);
  builder.children[t.root] = {};
  for (const NodeInfo& n : t.nodes) builder.children[n.id] = {};
  // Orient edges away from the root.
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : t.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::deque<NodeId> queue{t.root};
  std::set<NodeId> seen{t.root};
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u]) {
      if (in_tree.count(v) && !seen.count(v)) {
        seen.insert(v);
        builder.children[u].push_back(v);
        queue.push_back(v);
      }
    }
  }

  double max_w = 0.0, max_h = 0.0;
  for (const NodeInfo& n : t.nodes) {
    max_w = std::max(max_w, n.w);
    max_h = std::max(max_h, n.h);
  }
  builder.slot = std::max(ideal_edge_length, max_w + ideal_edge_length / 2.0);
  builder.pitch = std::max(ideal_edge_length, max_h + ideal_edge_length / 2.0);
  builder.compute_sizes(t.root);

  TreeShape shape = builder.layout(t.root);
  t.sub_layout.clear();
  for (const auto& [id, p] : shape.positions) t.sub_layout[id] = p;

  // Routes: vertical drop from the parent, then the horizontal run.
  auto pos_of = [&](NodeId id) -> Vec2 {
    return id == t.root ? Vec2{0.0, 0.0} : t.sub_layout.at(id);
  };
  auto parent_of = [&](NodeId a, NodeId b) {
    // the endpoint closer to the root is the parent
    for (NodeId c : builder.children.at(a)) {
      if (c == b) return std::pair{a, b};
    }
    return std::pair{b, a};
  };
  t.routes.clear();
  for (const Edge& e : t.edges) {
    const auto [p, c] = parent_of(e.u, e.v);
    const Vec2 pp = pos_of(p);
    const Vec2 cp = pos_of(c);
    Polyline route{pp};
    if (pp.x() != cp.x()) route.push_back({pp.x(), cp.y()});
    route.push_back(cp);
    t.routes.push_back(std::move(route));
  }

  t.bbox = BoundingBox{};
  t.bbox.expand(box_at({0.0, 0.0}, t.root_info.w, t.root_info.h));
  for (const NodeInfo& n : t.nodes) {
    t.bbox.expand(box_at(t.sub_layout.at(n.id), n.w, n.h));
  }
  for (const Polyline& route : t.routes) {
    for (const Vec2& p : route) t.bbox.expand(p);
  }
}

std::string decomposition_to_json(const Decomposition& dec) {
  std::ostringstream out;
  out << "{\"core\":" << serialize_graph(dec.core, GraphFormat::json)
      << ",\"trees\":[";
  for (std::size_t i = 0; i < dec.trees.size(); ++i) {
    const PeeledTree& t = dec.trees[i];
    if (i) out << ",";
    out << "{\"root\":" << t.root << ",\"nodes\":[";
    for (std::size_t k = 0; k < t.nodes.size(); ++k) {
      if (k) out << ",";
      out << t.nodes[k].id;
    }
    out << "],\"edges\":[";
    for (std::size_t k = 0; k < t.edges.size(); ++k) {
      if (k) out << ",";
      out << "[" << t.edges[k].u << "," << t.edges[k].v << "]";
    }
    out << "],\"layout\":{";
    bool first = true;
    for (const auto& [id, p] : t.sub_layout) {
      if (!first) out << ",";
      first = false;
      out << "\"" << id << "\":[" << format_coord(p.x()) << ","
          << format_coord(p.y()) << "]";
    }
    out << "}}";
  }
  out << "]}";
  return out.str();
}

}  // namespace arcol
