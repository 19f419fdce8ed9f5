#include "arcol/orthogonalize.hpp"

#include "arcol/distribution.hpp"
#include "arcol/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace arcol {

namespace {

struct CellLess {
  bool operator()(const Eigen::Vector2i& a, const Eigen::Vector2i& b) const {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  }
};
using CellSet = std::set<Eigen::Vector2i, CellLess>;

// Offsets sorted by (squared distance, angle from +x); precomputed once.
const std::vector<Eigen::Vector2i>& spiral_offsets() {
  static const std::vector<Eigen::Vector2i> offsets = [] {
    constexpr int R = 64;
    std::vector<Eigen::Vector2i> cells;
    cells.reserve((2 * R + 1) * (2 * R + 1));
    for (int dx = -R; dx <= R; ++dx) {
      for (int dy = -R; dy <= R; ++dy) cells.push_back({dx, dy});
    }
    std::sort(cells.begin(), cells.end(),
              [](const Eigen::Vector2i& a, const Eigen::Vector2i& b) {
                const long da = long(a.x()) * a.x() + long(a.y()) * a.y();
                const long db = long(b.x()) * b.x() + long(b.y()) * b.y();
                if (da != db) return da < db;
                double aa = std::atan2(double(a.y()), double(a.x()));
                double ab = std::atan2(double(b.y()), double(b.x()));
                if (aa < 0) aa += 2 * M_PI;
                if (ab < 0) ab += 2 * M_PI;
                return aa < ab;
              });
    return cells;
  }();
  return offsets;
}

}  // namespace

GridLayout snap_to_grid(const LayoutState& s, double cell) {
  GridLayout gl;
  gl.cell = cell;
  gl.coords.resize(s.graph.node_count());
  CellSet taken;
  for (int i = 0; i < s.graph.node_count(); ++i) {  // node-id order
    const Eigen::Vector2i rounded(
        static_cast<int>(std::lround(s.pos(i, 0) / cell)),
        static_cast<int>(std::lround(s.pos(i, 1) / cell)));
    for (const Eigen::Vector2i& off : spiral_offsets()) {
      const Eigen::Vector2i c = rounded + off;
      if (!taken.count(c)) {
        gl.coords[i] = c;
        taken.insert(c);
        break;
      }
    }
  }
  return gl;
}

GridLayout align_neighbors(const GridLayout& gl, const Graph& g) {
  GridLayout out = gl;
  CellSet taken;
  for (const auto& c : out.coords) taken.insert(c);

  auto edges = g.edges();
  std::sort(edges.begin(), edges.end());
  auto try_move = [&](int node, const Eigen::Vector2i& to) {
    if (taken.count(to)) return false;
    taken.erase(out.coords[node]);
    out.coords[node] = to;
    taken.insert(to);
    return true;
  };
  for (const Edge& e : edges) {
    const int a = g.index_of(e.u);
    const int b = g.index_of(e.v);
    const Eigen::Vector2i d = out.coords[b] - out.coords[a];
    if (d.x() == 0 || d.y() == 0) continue;  // already aligned
    if (std::abs(d.y()) == 1) {
      // zero the y offset: move b onto a's row, else a onto b's row
      if (try_move(b, {out.coords[b].x(), out.coords[a].y()})) continue;
      try_move(a, {out.coords[a].x(), out.coords[b].y()});
    } else if (std::abs(d.x()) == 1) {
      if (try_move(b, {out.coords[a].x(), out.coords[b].y()})) continue;
      try_move(a, {out.coords[b].x(), out.coords[a].y()});
    }
  }
  return out;
}

namespace {

int route_collisions(const Polyline& route,
                     const std::vector<BoundingBox>& obstacles) {
  int hits = 0;
  for (const BoundingBox& box : obstacles) {
    for (std::size_t k = 1; k < route.size(); ++k) {
      if (segment_intersects_box({route[k - 1], route[k]}, box)) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

}  // namespace

Polyline route_edge(const Vec2& p, const Vec2& q,
                    const std::vector<BoundingBox>& obstacles) {
  if (p.x() == q.x() || p.y() == q.y()) return {p, q};
  const Polyline l_horizontal{p, {q.x(), p.y()}, q};
  const Polyline l_vertical{p, {p.x(), q.y()}, q};
  const int ch = route_collisions(l_horizontal, obstacles);
  const int cv = route_collisions(l_vertical, obstacles);
  if (std::min(ch, cv) == 0) return ch <= cv ? l_horizontal : l_vertical;

  const double xm = (p.x() + q.x()) / 2.0;
  const double ym = (p.y() + q.y()) / 2.0;
  const Polyline z_horizontal{p, {xm, p.y()}, {xm, q.y()}, q};
  const Polyline z_vertical{p, {p.x(), ym}, {q.x(), ym}, q};
  const Polyline* best = &l_horizontal;
  int best_hits = ch;
  for (const Polyline* cand : {&l_vertical, &z_horizontal, &z_vertical}) {
    const int hits = route_collisions(*cand, obstacles);
    if (hits < best_hits) {
      best = cand;
      best_hits = hits;
    }
  }
  return *best;
}

LayoutState route_orthogonal(const GridLayout& gl, const Graph& g) {
  LayoutState s = make_layout(g, Stage::orthogonal);
  for (int i = 0; i < g.node_count(); ++i) s.set_position(i, gl.world(i));
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    const int a = g.index_of(edge.u);
    const int b = g.index_of(edge.v);
    std::vector<BoundingBox> obstacles;
    for (int i = 0; i < g.node_count(); ++i) {
      if (i != a && i != b) obstacles.push_back(s.node_box(i));
    }
    s.routes[e] = route_edge(s.position(a), s.position(b), obstacles);
  }
  return s;
}

namespace {

bool routes_collinear_overlap(const Polyline& r1, const Polyline& r2) {
  for (std::size_t i = 1; i < r1.size(); ++i) {
    for (std::size_t j = 1; j < r2.size(); ++j) {
      if (collinear_overlap({r1[i - 1], r1[i]}, {r2[j - 1], r2[j]})) {
        return true;
      }
    }
  }
  return false;
}

// Detour family for the overlap fix: a U around the straight line, or a
// Z with a shifted middle run, alternating sides with growing offsets.
Polyline detour_route(const Vec2& p, const Vec2& q, double cell, int attempt) {
  const double mag = cell * 0.5 * (1 + attempt / 2);
  const double delta = attempt % 2 == 0 ? mag : -mag;
  if (p.y() == q.y()) {
    return {p, {p.x(), p.y() + delta}, {q.x(), q.y() + delta}, q};
  }
  if (p.x() == q.x()) {
    return {p, {p.x() + delta, p.y()}, {q.x() + delta, q.y()}, q};
  }
  if (attempt % 4 < 2) {
    const double xm = (p.x() + q.x()) / 2.0 + delta;
    return {p, {xm, p.y()}, {xm, q.y()}, q};
  }
  const double ym = (p.y() + q.y()) / 2.0 + delta;
  return {p, {p.x(), ym}, {q.x(), ym}, q};
}

}  // namespace

void resolve_collinear_overlaps(std::vector<Polyline>& routes, double cell) {
  const int n = static_cast<int>(routes.size());
  for (int round = 0; round < 20; ++round) {
    bool dirty = false;
    for (int j = 1; j < n; ++j) {
      bool clash = false;
      for (int i = 0; i < j && !clash; ++i) {
        clash = routes_collinear_overlap(routes[i], routes[j]);
      }
      if (!clash) continue;
      const Vec2 p = routes[j].front();
      const Vec2 q = routes[j].back();
      for (int attempt = 0; attempt < 8; ++attempt) {
        Polyline cand = detour_route(p, q, cell, attempt);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          if (i != j) ok = !routes_collinear_overlap(routes[i], cand);
        }
        if (ok) {
          routes[j] = std::move(cand);
          dirty = true;
          break;
        }
      }
    }
    if (!dirty) break;
  }
}

namespace {

struct Crossing {
  Vec2 point;
  int edge_a = 0;  // edge_a < edge_b
  int edge_b = 0;
  double arc_a = 0.0;  // arc-length position along each route
  double arc_b = 0.0;
};

double arc_position(const Polyline& route, std::size_t seg, const Vec2& pt) {
  double arc = 0.0;
  for (std::size_t k = 1; k < seg; ++k) arc += (route[k] - route[k - 1]).norm();
  return arc + (pt - route[seg - 1]).norm();
}

}  // namespace

PlanarizedCore planarize(const LayoutState& s, double cell) {
  PlanarizedCore pc;
  const Graph& g = s.graph;
  pc.core_node_count = g.node_count();
  pc.nodes = g.nodes();

  std::vector<Polyline> routes(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) routes[e] = s.route_or_straight(e);
  resolve_collinear_overlaps(routes, cell);

  std::vector<Crossing> crossings;
  for (int i = 0; i < g.edge_count(); ++i) {
    for (int j = i + 1; j < g.edge_count(); ++j) {
      for (std::size_t a = 1; a < routes[i].size(); ++a) {
        for (std::size_t b = 1; b < routes[j].size(); ++b) {
          const Segment sa{routes[i][a - 1], routes[i][a]};
          const Segment sb{routes[j][b - 1], routes[j][b]};
          if (auto pt = proper_crossing(sa, sb)) {
            crossings.push_back({*pt, i, j, arc_position(routes[i], a, *pt),
                                 arc_position(routes[j], b, *pt)});
          }
        }
      }
    }
  }
  std::sort(crossings.begin(), crossings.end(),
            [](const Crossing& a, const Crossing& b) {
              return std::tie(a.edge_a, a.arc_a, a.edge_b, a.arc_b) <
                     std::tie(b.edge_a, b.arc_a, b.edge_b, b.arc_b);
            });

  NodeId next_id = 0;
  for (const NodeInfo& n : pc.nodes) next_id = std::max(next_id, n.id + 1);
  pc.pos.resize(static_cast<int>(pc.nodes.size() + crossings.size()), 2);
  for (int i = 0; i < g.node_count(); ++i) pc.pos.row(i) = s.pos.row(i);
  std::vector<int> crossing_node(crossings.size());
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    const int idx = pc.core_node_count + static_cast<int>(c);
    pc.nodes.push_back({next_id++, 0.0, 0.0, true});
    pc.pos.row(idx) = crossings[c].point.transpose();
    pc.dummy_cross.emplace_back(crossings[c].edge_a, crossings[c].edge_b);
    crossing_node[c] = idx;
  }

  // Split every route at its crossings, in arc order.
  pc.pieces_of_edge.assign(g.edge_count(), {});
  for (int e = 0; e < g.edge_count(); ++e) {
    struct Cut {
      double arc;
      int node;
    };
    std::vector<Cut> cuts;
    for (std::size_t c = 0; c < crossings.size(); ++c) {
      if (crossings[c].edge_a == e) cuts.push_back({crossings[c].arc_a, crossing_node[c]});
      if (crossings[c].edge_b == e) cuts.push_back({crossings[c].arc_b, crossing_node[c]});
    }
    std::sort(cuts.begin(), cuts.end(),
              [](const Cut& a, const Cut& b) { return a.arc < b.arc; });

    const Edge& edge = g.edges()[e];
    int from_node = g.index_of(edge.u);
    // routes are always stored from u, which the arc positions rely on
    const Polyline& oriented = routes[e];

    double consumed = 0.0;
    std::size_t seg = 1;
    Vec2 cursor = oriented.front();
    auto cut_at = [&](double arc) {
      Polyline part{cursor};
      while (seg < oriented.size()) {
        const double seg_len = (oriented[seg] - cursor).norm();
        if (consumed + seg_len < arc - 1e-12) {
          consumed += seg_len;
          cursor = oriented[seg++];
          part.push_back(cursor);
        } else {
          const double remain = arc - consumed;
          const Vec2 dirv = (oriented[seg] - cursor).normalized();
          const Vec2 pt = cursor + remain * dirv;
          consumed = arc;
          if ((pt - cursor).norm() > 1e-12 || part.size() == 1) {
            part.push_back(pt);
          }
          cursor = pt;
          return part;
        }
      }
      return part;
    };

    for (const Cut& cut : cuts) {
      Polyline part = cut_at(cut.arc);
      part.back() = pc.position(cut.node);  // exact crossing point
      cursor = part.back();
      const int piece = static_cast<int>(pc.pieces.size());
      pc.pieces.push_back({from_node, cut.node, std::move(part), e});
      pc.pieces_of_edge[e].push_back(piece);
      from_node = cut.node;
    }
    Polyline tail{cursor};
    while (seg < oriented.size()) tail.push_back(oriented[seg++]);
    const int to_node = g.index_of(edge.v);
    if ((tail.back() - s.position(to_node)).norm() > 1e-12) {
      tail.push_back(s.position(to_node));
    }
    const int piece = static_cast<int>(pc.pieces.size());
    pc.pieces.push_back({from_node, to_node, std::move(tail), e});
    pc.pieces_of_edge[e].push_back(piece);
  }
  return pc;
}

std::pair<LayoutState, PlanarizedCore> orthogonalize_core(
    const LayoutState& core, const LayoutConfig& cfg) {
  const double cell = cfg.ideal_edge_length;
  LayoutState s = core;
  if (!cfg.baseline) normalize_ar(s.pos, cfg.target_ar, cfg.ideal_edge_length);
  GridLayout gl = snap_to_grid(s, cell);
  gl = align_neighbors(gl, s.graph);
  for (int i = 0; i < s.graph.node_count(); ++i) s.set_position(i, gl.world(i));
  if (!cfg.baseline) normalize_ar(s.pos, cfg.target_ar, cfg.ideal_edge_length);
  gl = snap_to_grid(s, cell);
  LayoutState routed = route_orthogonal(gl, s.graph);
  PlanarizedCore pc = planarize(routed, cell);
  // keep the routed state in sync with the perturbed planar routes
  for (int e = 0; e < routed.graph.edge_count(); ++e) {
    Polyline merged;
    for (int piece : pc.pieces_of_edge[e]) {
      const Polyline& part = pc.pieces[piece].route;
      if (merged.empty()) {
        merged = part;
      } else {
        merged.insert(merged.end(), part.begin() + 1, part.end());
      }
    }
    routed.routes[e] = std::move(merged);
  }
  return {std::move(routed), std::move(pc)};
}

std::string grid_to_json(const GridLayout& gl, const Graph& g) {
  std::ostringstream out;
  out << "{\"cell\":" << format_coord(gl.cell) << ",\"origin\":["
      << format_coord(gl.origin.x()) << "," << format_coord(gl.origin.y())
      << "],\"cells\":{";
  for (int i = 0; i < g.node_count(); ++i) {
    if (i) out << ",";
    out << "\"" << g.nodes()[i].id << "\":[" << gl.coords[i].x() << ","
        << gl.coords[i].y() << "]";
  }
  out << "}}";
  return out.str();
}

}  // namespace arcol
