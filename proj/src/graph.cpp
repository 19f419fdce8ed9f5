#include "arcol/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>

namespace arcol {

void Graph::add_node(NodeId id, double w, double h, bool dummy) {
  if (id < 0) throw ValidationError("node ids must be non-negative");
  if (index_.count(id)) throw ValidationError("duplicate node id " + std::to_string(id));
  NodeInfo info{id, w, h, dummy};
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), info,
      [](const NodeInfo& a, const NodeInfo& b) { return a.id < b.id; });
  nodes_.insert(it, info);
  rebuild_adjacency();
}

bool Graph::add_edge(NodeId a, NodeId b) {
  if (a == b) throw ValidationError("self-loop at node " + std::to_string(a));
  if (!has_node(a) || !has_node(b)) {
    throw ValidationError("edge endpoint not in graph");
  }
  const Edge e = make_edge(a, b);
  if (has_edge(e.u, e.v)) return false;
  edges_.push_back(e);
  const int iu = index_of(e.u);
  const int iv = index_of(e.v);
  adjacency_[iu].insert(
      std::lower_bound(adjacency_[iu].begin(), adjacency_[iu].end(), iv), iv);
  adjacency_[iv].insert(
      std::lower_bound(adjacency_[iv].begin(), adjacency_[iv].end(), iu), iu);
  return true;
}

void Graph::remove_node(NodeId id) {
  const int idx = index_of(id);
  nodes_.erase(nodes_.begin() + idx);
  std::erase_if(edges_, [id](const Edge& e) { return e.u == id || e.v == id; });
  rebuild_adjacency();
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (!has_node(a) || !has_node(b)) return false;
  const auto& adj = adjacency_[index_of(a)];
  return std::binary_search(adj.begin(), adj.end(), index_of(b));
}

int Graph::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw ValidationError("unknown node id " + std::to_string(id));
  }
  return it->second;
}

void Graph::rebuild_adjacency() {
  index_.clear();
  for (int i = 0; i < node_count(); ++i) index_[nodes_[i].id] = i;
  adjacency_.assign(nodes_.size(), {});
  for (const Edge& e : edges_) {
    adjacency_[index_.at(e.u)].push_back(index_.at(e.v));
    adjacency_[index_.at(e.v)].push_back(index_.at(e.u));
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

bool Graph::connected() const {
  if (nodes_.empty()) return true;
  std::vector<char> seen(nodes_.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int found = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++found;
        queue.push_back(v);
      }
    }
  }
  return found == node_count();
}

void Graph::restrict_to_largest_component() {
  if (nodes_.empty()) return;
  std::vector<int> comp(nodes_.size(), -1);
  int n_comp = 0;
  for (int s = 0; s < node_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> queue{s};
    comp[s] = n_comp;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adjacency_[u]) {
        if (comp[v] < 0) {
          comp[v] = n_comp;
          queue.push_back(v);
        }
      }
    }
    ++n_comp;
  }
  std::vector<int> size(n_comp, 0);
  for (int c : comp) ++size[c];
  int best = 0;
  for (int c = 1; c < n_comp; ++c) {
    if (size[c] > size[best]) best = c;  // ties keep the smallest-id root
  }
  std::vector<NodeId> drop;
  for (int i = 0; i < node_count(); ++i) {
    if (comp[i] != best) drop.push_back(nodes_[i].id);
  }
  for (NodeId id : drop) remove_node(id);
}

void Graph::validate_connected() const {
  if (!connected()) {
    throw ValidationError(
        "graph is disconnected (use --largest-component to extract one)");
  }
}

AspectRatioTarget parse_aspect_ratio(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon != std::string::npos) {
      const double w = std::stod(text.substr(0, colon));
      const double h = std::stod(text.substr(colon + 1));
      if (!(h > 0.0)) throw ValidationError("aspect ratio height must be > 0");
      return AspectRatioTarget(w / h);
    }
    return AspectRatioTarget(std::stod(text));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse aspect ratio '" + text + "'");
  }
}

void LayoutConfig::validate() const {
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw ValidationError("discount must be in (0, 1]");
  }
  if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
  if (!(refine_fraction >= 0.0 && refine_fraction <= 1.0)) {
    throw ValidationError("refine_fraction must be in [0, 1]");
  }
  if (!(refine_cap >= 0.0 && refine_cap < 1.0)) {
    throw ValidationError("refine_cap must be in [0, 1)");
  }
  if (!(ideal_edge_length > 0.0)) {
    throw ValidationError("ideal_edge_length must be > 0");
  }
  if (restarts < 1) throw ValidationError("restarts must be >= 1");
  if (max_stress_iterations < 1) {
    throw ValidationError("max_stress_iterations must be >= 1");
  }
}

const char* stage_name(Stage s) {
  static const char* names[] = {"distributed", "orthogonal", "attached",
                                "refined"};
  return names[static_cast<int>(s)];
}

Stage stage_from_name(const std::string& name) {
  for (int i = 0; i < 4; ++i) {
    if (name == stage_name(static_cast<Stage>(i))) return static_cast<Stage>(i);
  }
  throw ParseError("unknown stage '" + name + "'");
}

Polyline LayoutState::route_or_straight(int e) const {
  if (e < static_cast<int>(routes.size()) && routes[e].size() >= 2) {
    return routes[e];
  }
  const Edge& edge = graph.edges()[e];
  return {position(graph.index_of(edge.u)), position(graph.index_of(edge.v))};
}

void LayoutState::translate(const Vec2& t) {
  pos.col(0).array() += t.x();
  pos.col(1).array() += t.y();
  for (auto& route : routes) {
    for (auto& p : route) p += t;
  }
}

LayoutState make_layout(const Graph& g, Stage stage) {
  LayoutState s;
  s.graph = g;
  s.pos = PositionMatrix::Zero(g.node_count(), 2);
  s.routes.assign(g.edge_count(), {});
  s.stage = stage;
  return s;
}

BoundingBox bounding_box(const LayoutState& s) {
  if (s.graph.node_count() == 0) throw ValidationError("empty layout");
  BoundingBox box;
  for (int i = 0; i < s.graph.node_count(); ++i) box.expand(s.node_box(i));
  for (int e = 0; e < s.graph.edge_count(); ++e) {
    for (const Vec2& p : s.route_or_straight(e)) box.expand(p);
  }
  return box;
}

Eigen::MatrixXd graph_distances(const Graph& g, double ideal_edge_length) {
  const int n = g.node_count();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> hops(n);
  std::deque<int> queue;
  for (int s = 0; s < n; ++s) {
    std::fill(hops.begin(), hops.end(), -1);
    hops[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : g.neighbors(u)) {
        if (hops[v] < 0) {
          hops[v] = hops[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int t = 0; t < n; ++t) {
      if (hops[t] < 0) {
        throw ValidationError("graph is disconnected: no path between nodes " +
                              std::to_string(g.nodes()[s].id) + " and " +
                              std::to_string(g.nodes()[t].id));
      }
      d(s, t) = hops[t] * ideal_edge_length;
    }
  }
  return d;
}

}  // namespace arcol
