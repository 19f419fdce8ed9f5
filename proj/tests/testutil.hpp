#ifndef ARCOL_TESTS_TESTUTIL_HPP
#define ARCOL_TESTS_TESTUTIL_HPP

// Test-side oracles and generators. Everything here is deliberately
// implemented independently of the library code it checks.

#include "arcol/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace arcol::testutil {

inline double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

// Random connected graph: random spanning tree plus `extra` random edges.
inline Graph random_connected_graph(int n, int extra, std::uint64_t seed,
                                    double node_size = 20.0) {
  std::mt19937_64 rng(seed);
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i, node_size, node_size);
  for (int i = 1; i < n; ++i) {
    g.add_edge(i, static_cast<int>(rng() % i));
  }
  for (int k = 0; k < extra; ++k) {
    const int a = static_cast<int>(rng() % n);
    const int b = static_cast<int>(rng() % n);
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

inline Graph cycle_graph(int n, double node_size = 20.0) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i, node_size, node_size);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path_graph(int n, double node_size = 20.0) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i, node_size, node_size);
  for (int i = 1; i < n; ++i) g.add_edge(i - 1, i);
  return g;
}

inline Graph grid_graph(int rows, int cols, double node_size = 20.0) {
  Graph g;
  for (int i = 0; i < rows * cols; ++i) g.add_node(i, node_size, node_size);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int id = r * cols + c;
      if (c + 1 < cols) g.add_edge(id, id + 1);
      if (r + 1 < rows) g.add_edge(id, id + cols);
    }
  }
  return g;
}

inline Graph complete_graph(int n, double node_size = 20.0) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_node(i, node_size, node_size);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

// --- BFS distance oracle (hop counts) ---
inline std::vector<std::vector<int>> bfs_hops_oracle(const Graph& g) {
  const int n = g.node_count();
  std::vector<std::vector<int>> hops(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::deque<int> q{s};
    hops[s][s] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v : g.neighbors(u)) {
        if (hops[s][v] < 0) {
          hops[s][v] = hops[s][u] + 1;
          q.push_back(v);
        }
      }
    }
  }
  return hops;
}

// --- brute-force box overlap oracle ---
inline int overlap_pairs_oracle(const LayoutState& s, double tol = 1e-9) {
  int count = 0;
  const int n = s.graph.node_count();
  for (int i = 0; i < n; ++i) {
    const BoundingBox a = s.node_box(i);
    for (int j = i + 1; j < n; ++j) {
      const BoundingBox b = s.node_box(j);
      const bool overlap = a.min_x < b.max_x - tol && b.min_x < a.max_x - tol &&
                           a.min_y < b.max_y - tol && b.min_y < a.max_y - tol;
      if (overlap) ++count;
    }
  }
  return count;
}

// --- independent segment-crossing oracle ---
// Proper crossing of two segments via interval/orientation arithmetic,
// written without reference to the library's geometry code.
inline bool oracle_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                         const Vec2& q2) {
  auto side = [](const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v =
        (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  const int s1 = side(p1, p2, q1);
  const int s2 = side(p1, p2, q2);
  const int s3 = side(q1, q2, p1);
  const int s4 = side(q1, q2, p2);
  return s1 * s2 < 0 && s3 * s4 < 0;
}

// Counts proper route crossings between edges with no shared endpoint.
inline int crossing_count_oracle(const LayoutState& s) {
  const int m = s.graph.edge_count();
  int total = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Edge& a = s.graph.edges()[i];
      const Edge& b = s.graph.edges()[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
      const Polyline ra = s.route_or_straight(i);
      const Polyline rb = s.route_or_straight(j);
      for (std::size_t p = 1; p < ra.size(); ++p) {
        for (std::size_t q = 1; q < rb.size(); ++q) {
          if (oracle_cross(ra[p - 1], ra[p], rb[q - 1], rb[q])) ++total;
        }
      }
    }
  }
  return total;
}

// --- iterative leaf-peel oracle (set semantics, no tie-break rules) ---
// Returns the node ids that survive simultaneous-round leaf peeling; for
// trees this ends empty or with a 1-2 node remainder.
inline std::set<NodeId> leaf_peel_fixpoint_oracle(const Graph& g) {
  std::set<NodeId> alive;
  std::map<NodeId, std::set<NodeId>> adj;
  for (const NodeInfo& n : g.nodes()) alive.insert(n.id);
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  while (true) {
    std::vector<NodeId> leaves;
    for (NodeId id : alive) {
      if (adj[id].size() <= 1) leaves.push_back(id);
    }
    if (leaves.empty() || leaves.size() == alive.size()) break;
    for (NodeId id : leaves) {
      for (NodeId nb : adj[id]) adj[nb].erase(id);
      adj[id].clear();
      alive.erase(id);
    }
  }
  return alive;
}

// --- random layout for metric fuzzing ---
inline LayoutState random_layout(const Graph& g, std::uint64_t seed,
                                 double span = 400.0) {
  std::mt19937_64 rng(seed);
  LayoutState s = make_layout(g);
  for (int i = 0; i < g.node_count(); ++i) {
    s.pos(i, 0) = uniform01(rng) * span;
    s.pos(i, 1) = uniform01(rng) * span;
  }
  return s;
}

// --- counting XML walker (GraphML oracle) ---
// Counts <node>/<edge> elements and distinct undirected edge pairs by raw
// string scanning.
struct GraphMLCounts {
  int nodes = 0;
  int edges = 0;
  int unique_undirected = 0;
};
inline GraphMLCounts count_graphml_oracle(const std::string& text) {
  GraphMLCounts c;
  std::set<std::pair<std::string, std::string>> pairs;
  std::size_t i = 0;
  while ((i = text.find('<', i)) != std::string::npos) {
    if (text.compare(i, 5, "<node") == 0) ++c.nodes;
    if (text.compare(i, 5, "<edge") == 0) {
      ++c.edges;
      const auto close = text.find('>', i);
      const std::string tag = text.substr(i, close - i);
      auto attr = [&](const std::string& name) {
        const auto p = tag.find(name + "=\"");
        const auto start = p + name.size() + 2;
        return tag.substr(start, tag.find('"', start) - start);
      };
      std::string s = attr("source");
      std::string t = attr("target");
      if (t < s) std::swap(s, t);
      pairs.insert({s, t});
    }
    ++i;
  }
  c.unique_undirected = static_cast<int>(pairs.size());
  return c;
}

}  // namespace arcol::testutil

#endif
