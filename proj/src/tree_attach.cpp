#include "arcol/tree_attach.hpp"

#include "arcol/distribution.hpp"
#include "arcol/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace arcol {

DrawingView make_view(const LayoutState& s) {
  DrawingView view;
  for (int i = 0; i < s.graph.node_count(); ++i) {
    view.boxes.push_back(s.node_box(i));
  }
  for (int e = 0; e < s.graph.edge_count(); ++e) {
    const Polyline route = s.route_or_straight(e);
    for (std::size_t k = 1; k < route.size(); ++k) {
      view.segments.push_back({route[k - 1], route[k]});
    }
  }
  view.bbox = bounding_box(s);
  return view;
}

Vec2 orient_offset(const Vec2& canonical, Dir dir, bool flip) {
  const Vec2 p = flip ? Vec2{-canonical.x(), canonical.y()} : canonical;
  switch (dir) {
    case Dir::S: return p;                    // canonical growth
    case Dir::N: return {-p.x(), -p.y()};
    case Dir::E: return {p.y(), -p.x()};
    default: return {-p.y(), p.x()};          // W
  }
}

BoundingBox oriented_tree_bbox(const PeeledTree& t, Dir dir, bool flip) {
  const BoundingBox& b = t.bbox;
  BoundingBox out;
  for (const Vec2& corner : {Vec2{b.min_x, b.min_y}, Vec2{b.max_x, b.min_y},
                             Vec2{b.min_x, b.max_y}, Vec2{b.max_x, b.max_y}}) {
    out.expand(orient_offset(corner, dir, flip));
  }
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Signed frame of a ray direction: c() grows along the ray, l() is the
// lateral coordinate.
struct RayFrame {
  Dir dir;
  double c(const Vec2& p) const {
    switch (dir) {
      case Dir::E: return p.x();
      case Dir::W: return -p.x();
      case Dir::S: return p.y();
      default: return -p.y();
    }
  }
  double l(const Vec2& p) const {
    return dir == Dir::E || dir == Dir::W ? p.y() : p.x();
  }
};

double ray_distance(const DrawingView& view, const Vec2& from, Dir dir,
                    int skip_box) {
  const RayFrame f{dir};
  const double c0 = f.c(from);
  const double l0 = f.l(from);
  double best = kInf;
  for (std::size_t i = 0; i < view.boxes.size(); ++i) {
    if (static_cast<int>(i) == skip_box) continue;
    const BoundingBox& b = view.boxes[i];
    if (b.empty() || b.width() * b.height() == 0.0) continue;
    const Vec2 lo{b.min_x, b.min_y};
    const Vec2 hi{b.max_x, b.max_y};
    const double c1 = std::min(f.c(lo), f.c(hi));
    const double c2 = std::max(f.c(lo), f.c(hi));
    const double l1 = std::min(f.l(lo), f.l(hi));
    const double l2 = std::max(f.l(lo), f.l(hi));
    if (l1 < l0 && l0 < l2 && c2 > c0) {
      best = std::min(best, std::max(0.0, c1 - c0));
    }
  }
  for (const Segment& seg : view.segments) {
    const double ca = f.c(seg.a), cb = f.c(seg.b);
    const double la = f.l(seg.a), lb = f.l(seg.b);
    if (la == lb) {  // parallel to the ray
      if (la == l0 && std::max(ca, cb) >= c0) {
        best = std::min(best, std::max(0.0, std::min(ca, cb) - c0));
      }
    } else {  // crosses the ray's lateral band
      if (std::min(la, lb) < l0 && l0 < std::max(la, lb) && ca >= c0) {
        best = std::min(best, ca - c0);
      }
    }
  }
  return best;
}

struct Overflows {
  double forward = 0.0;
  double lat_neg = 0.0;
  double lat_pos = 0.0;
};

double forward_extent(const BoundingBox& b, Dir dir) {
  switch (dir) {
    case Dir::E: return b.max_x;
    case Dir::W: return -b.min_x;
    case Dir::S: return b.max_y;
    default: return -b.min_y;
  }
}

Overflows measure_overflows(const PlacementCandidate& cand,
                            const DrawingView& view, double L) {
  const double pad = L / 4.0;
  const BoundingBox bb = oriented_tree_bbox(*cand.tree, cand.orientation,
                                            cand.flip);
  const Dir dir = cand.orientation;
  const bool horiz = dir == Dir::E || dir == Dir::W;
  const double root_extent =
      horiz ? cand.root_box.width() / 2.0 : cand.root_box.height() / 2.0;

  const double free_forward =
      ray_distance(view, cand.root_pos, dir, cand.root_box_index);
  const Vec2 probe = cand.root_pos + dir_vector(dir) * (root_extent + pad);
  const Dir lat_neg_dir = horiz ? Dir::N : Dir::W;
  const Dir lat_pos_dir = horiz ? Dir::S : Dir::E;
  const double free_neg = ray_distance(view, probe, lat_neg_dir, -1);
  const double free_pos = ray_distance(view, probe, lat_pos_dir, -1);

  const double need_forward = forward_extent(bb, dir) + pad;
  const double need_neg = (horiz ? -bb.min_y : -bb.min_x) + pad;
  const double need_pos = (horiz ? bb.max_y : bb.max_x) + pad;

  Overflows o;
  o.forward = std::max(0.0, need_forward - free_forward);
  o.lat_neg = std::max(0.0, need_neg - free_neg);
  o.lat_pos = std::max(0.0, need_pos - free_pos);
  return o;
}

std::pair<double, double> split_cost(const Overflows& o, Dir dir) {
  const bool horiz = dir == Dir::E || dir == Dir::W;
  const double along = o.forward;
  const double lateral = o.lat_neg + o.lat_pos;
  return horiz ? std::pair{along, lateral} : std::pair{lateral, along};
}

}  // namespace

std::pair<double, double> expansion_cost(const PlacementCandidate& cand,
                                         const DrawingView& view,
                                         double ideal_edge_length) {
  return split_cost(measure_overflows(cand, view, ideal_edge_length),
                    cand.orientation);
}

double projected_ar(const PlacementCandidate& cand, const DrawingView& view,
                    double ideal_edge_length) {
  const auto [c_x, c_y] = expansion_cost(cand, view, ideal_edge_length);
  BoundingBox u = view.bbox;
  u.expand(oriented_tree_bbox(*cand.tree, cand.orientation, cand.flip)
               .translated(cand.root_pos));
  return (u.width() + c_x) / (u.height() + c_y);
}

CostBreakdown assemble_cost(double c_x, double c_y, double ar_proj,
                            double a_tree, double a_core,
                            const LayoutConfig& cfg) {
  CostBreakdown cb;
  cb.c_x = c_x;
  cb.c_y = c_y;
  cb.ar_proj = ar_proj;
  cb.omega = cfg.omega();
  const double log_dev = std::log(ar_proj / cfg.target_ar.value);
  if (cfg.baseline) {
    cb.w_x = cb.w_y = 1.0;
    cb.lambda = 0.0;
  } else {
    if (std::abs(log_dev) <= 1e-9) {
      cb.w_x = cb.w_y = 1.0;
    } else if (ar_proj < cfg.target_ar.value) {
      cb.w_x = cfg.discount;  // too tall: widening is discounted
      cb.w_y = 1.0;
    } else {
      cb.w_x = 1.0;
      cb.w_y = cfg.discount;  // too wide: growing down is discounted
    }
    cb.lambda =
        a_core > 0.0 ? std::min(1.0, std::pow(a_tree / a_core, cfg.beta)) : 1.0;
  }
  cb.c_space = cb.w_x * c_x + cb.w_y * c_y;
  cb.c_ar = log_dev * log_dev;
  cb.c_final = cb.c_space + cb.lambda * cb.omega * cb.c_ar;
  return cb;
}

CostBreakdown placement_cost(const PlacementCandidate& cand,
                             const DrawingView& view,
                             const LayoutConfig& cfg) {
  const auto [c_x, c_y] = expansion_cost(cand, view, cfg.ideal_edge_length);
  const double ar = projected_ar(cand, view, cfg.ideal_edge_length);
  return assemble_cost(c_x, c_y, ar, cand.tree->area(), view.bbox.area(), cfg);
}

namespace {

struct Workspace {
  PlanarizedCore pc;
  std::vector<NodeInfo> tree_nodes;
  std::vector<Vec2> tree_pos;
  std::vector<Edge> tree_edges;
  std::vector<Polyline> tree_routes;

  DrawingView view() const {
    DrawingView v;
    for (std::size_t i = 0; i < pc.nodes.size(); ++i) {
      v.boxes.push_back(pc.node_box(static_cast<int>(i)));
      v.bbox.expand(v.boxes.back());
    }
    for (std::size_t i = 0; i < tree_nodes.size(); ++i) {
      v.boxes.push_back(box_at(tree_pos[i], tree_nodes[i].w, tree_nodes[i].h));
      v.bbox.expand(v.boxes.back());
    }
    for (const PlanarPiece& p : pc.pieces) {
      for (std::size_t k = 1; k < p.route.size(); ++k) {
        v.segments.push_back({p.route[k - 1], p.route[k]});
        v.bbox.expand(p.route[k - 1]);
        v.bbox.expand(p.route[k]);
      }
    }
    for (const Polyline& r : tree_routes) {
      for (std::size_t k = 1; k < r.size(); ++k) {
        v.segments.push_back({r[k - 1], r[k]});
        v.bbox.expand(r[k - 1]);
        v.bbox.expand(r[k]);
      }
    }
    return v;
  }

  void shift(Axis axis, double line, double amount, bool positive_side) {
    if (amount <= 0.0) return;
    const int col = axis == Axis::X ? 0 : 1;
    auto move = [&](double& c) {
      if (positive_side ? c > line : c < line) {
        c += positive_side ? amount : -amount;
      }
    };
    for (Eigen::Index i = 0; i < pc.pos.rows(); ++i) move(pc.pos(i, col));
    for (Vec2& p : tree_pos) move(p[col]);
    for (PlanarPiece& piece : pc.pieces) {
      for (Vec2& p : piece.route) move(p[col]);
    }
    for (Polyline& r : tree_routes) {
      for (Vec2& p : r) move(p[col]);
    }
  }
};

struct ScoredCandidate {
  PlacementCandidate cand;
  CostBreakdown cost;
  Overflows overflows;
};

void apply_placement(Workspace& ws, const PeeledTree& t,
                     const ScoredCandidate& sc) {
  const Vec2 root = sc.cand.root_pos;
  const Overflows& o = sc.overflows;
  switch (sc.cand.orientation) {
    case Dir::E:
      ws.shift(Axis::X, root.x(), o.forward, true);
      ws.shift(Axis::Y, root.y(), o.lat_neg, false);
      ws.shift(Axis::Y, root.y(), o.lat_pos, true);
      break;
    case Dir::W:
      ws.shift(Axis::X, root.x(), o.forward, false);
      ws.shift(Axis::Y, root.y(), o.lat_neg, false);
      ws.shift(Axis::Y, root.y(), o.lat_pos, true);
      break;
    case Dir::S:
      ws.shift(Axis::Y, root.y(), o.forward, true);
      ws.shift(Axis::X, root.x(), o.lat_neg, false);
      ws.shift(Axis::X, root.x(), o.lat_pos, true);
      break;
    case Dir::N:
      ws.shift(Axis::Y, root.y(), o.forward, false);
      ws.shift(Axis::X, root.x(), o.lat_neg, false);
      ws.shift(Axis::X, root.x(), o.lat_pos, true);
      break;
  }
  for (const NodeInfo& n : t.nodes) {
    ws.tree_nodes.push_back(n);
    ws.tree_pos.push_back(
        root + orient_offset(t.sub_layout.at(n.id), sc.cand.orientation,
                             sc.cand.flip));
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    ws.tree_edges.push_back(t.edges[e]);
    Polyline route;
    for (const Vec2& p : t.routes[e]) {
      route.push_back(root +
                      orient_offset(p, sc.cand.orientation, sc.cand.flip));
    }
    ws.tree_routes.push_back(std::move(route));
  }
}

}  // namespace

LayoutState attach_trees(const Decomposition& dec, const LayoutState& core,
                         const PlanarizedCore& pc, const LayoutConfig& cfg,
                         std::vector<PlacementRecord>* log) {
  Workspace ws{pc, {}, {}, {}, {}};
  const std::vector<Face> faces = enumerate_faces(pc);

  std::vector<int> order(dec.trees.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double aa = dec.trees[a].area();
    const double ab = dec.trees[b].area();
    if (aa != ab) return aa > ab;
    return dec.trees[a].root < dec.trees[b].root;
  });

  constexpr Dir kDirs[] = {Dir::N, Dir::E, Dir::S, Dir::W};
  for (int ti : order) {
    const PeeledTree& tree = dec.trees[ti];
    const int root_idx = core.graph.index_of(tree.root);
    const DrawingView view = ws.view();
    const Vec2 root_pos = ws.pc.position(root_idx);
    const BoundingBox root_box = ws.pc.node_box(root_idx);

    auto make_candidate = [&](int face_id, Dir dir, bool flip) {
      PlacementCandidate cand;
      cand.tree = &tree;
      cand.face_id = face_id;
      cand.orientation = dir;
      cand.flip = flip;
      cand.root_pos = root_pos;
      cand.root_box = root_box;
      cand.root_box_index = root_idx;
      return cand;
    };
    auto score = [&](const PlacementCandidate& cand) {
      ScoredCandidate sc;
      sc.cand = cand;
      sc.overflows = measure_overflows(cand, view, cfg.ideal_edge_length);
      const auto [c_x, c_y] = split_cost(sc.overflows, cand.orientation);
      const double ar = projected_ar(cand, view, cfg.ideal_edge_length);
      sc.cost = assemble_cost(c_x, c_y, ar, tree.area(), view.bbox.area(), cfg);
      return sc;
    };

    std::vector<ScoredCandidate> scored;
    for (const Face& f : faces) {
      if (!f.on_boundary(root_idx)) continue;
      for (Dir dir : kDirs) {
        const bool horiz = dir == Dir::E || dir == Dir::W;
        const double extent =
            horiz ? root_box.width() / 2.0 : root_box.height() / 2.0;
        const Vec2 probe =
            root_pos +
            dir_vector(dir) * (extent + cfg.ideal_edge_length / 8.0);
        if (face_at(faces, ws.pc, probe) != f.id) continue;
        for (bool flip : {false, true}) {
          scored.push_back(score(make_candidate(f.id, dir, flip)));
        }
      }
    }

    int best = -1;
    if (!scored.empty()) {
      for (std::size_t i = 0; i < scored.size(); ++i) {
        if (best < 0 || scored[i].cost.c_final < scored[best].cost.c_final) {
          best = static_cast<int>(i);
        }
      }
    } else {
      // root not reachable from any face: drop it into the external face
      // on the side that improves the aspect ratio most
      int ext = 0;
      for (const Face& f : faces) {
        if (f.is_external) ext = f.id;
      }
      for (Dir dir : kDirs) {
        for (bool flip : {false, true}) {
          scored.push_back(score(make_candidate(ext, dir, flip)));
        }
      }
      for (std::size_t i = 0; i < scored.size(); ++i) {
        if (best < 0 || scored[i].cost.c_ar < scored[best].cost.c_ar) {
          best = static_cast<int>(i);
        }
      }
    }

    if (log) {
      for (std::size_t i = 0; i < scored.size(); ++i) {
        log->push_back({tree.root, scored[i].cand.face_id,
                        scored[i].cand.orientation, scored[i].cand.flip,
                        scored[i].cost, static_cast<int>(i) == best});
      }
    }
    apply_placement(ws, tree, scored[best]);
  }

  // Drop the dummies: stitch piece routes back into whole edges and merge
  // the tree geometry.
  LayoutState out;
  for (int i = 0; i < ws.pc.core_node_count; ++i) {
    out.graph.add_node(ws.pc.nodes[i].id, ws.pc.nodes[i].w, ws.pc.nodes[i].h);
  }
  for (const NodeInfo& n : ws.tree_nodes) out.graph.add_node(n.id, n.w, n.h);
  out.pos = PositionMatrix::Zero(out.graph.node_count(), 2);
  for (int i = 0; i < ws.pc.core_node_count; ++i) {
    out.pos.row(out.graph.index_of(ws.pc.nodes[i].id)) = ws.pc.pos.row(i);
  }
  for (std::size_t i = 0; i < ws.tree_nodes.size(); ++i) {
    out.pos.row(out.graph.index_of(ws.tree_nodes[i].id)) =
        ws.tree_pos[i].transpose();
  }
  for (int e = 0; e < core.graph.edge_count(); ++e) {
    const Edge& edge = core.graph.edges()[e];
    out.graph.add_edge(edge.u, edge.v);
    Polyline merged;
    for (int piece : ws.pc.pieces_of_edge[e]) {
      const Polyline& part = ws.pc.pieces[piece].route;
      if (merged.empty()) {
        merged = part;
      } else {
        merged.insert(merged.end(), part.begin() + 1, part.end());
      }
    }
    out.routes.push_back(std::move(merged));
  }
  for (std::size_t e = 0; e < ws.tree_edges.size(); ++e) {
    out.graph.add_edge(ws.tree_edges[e].u, ws.tree_edges[e].v);
    out.routes.push_back(ws.tree_routes[e]);
  }
  out.stage = Stage::attached;
  return out;
}

LayoutState apply_expansion(const LayoutState& s, Axis axis, double line,
                            double amount) {
  if (amount < 0.0) throw ValidationError("expansion amount must be >= 0");
  LayoutState out = s;
  const int col = axis == Axis::X ? 0 : 1;
  for (Eigen::Index i = 0; i < out.pos.rows(); ++i) {
    if (out.pos(i, col) > line) out.pos(i, col) += amount;
  }
  for (Polyline& route : out.routes) {
    for (Vec2& p : route) {
      if (p[col] > line) p[col] += amount;
    }
  }
  return out;
}

LayoutState compact_and_route(const LayoutState& s, double cell) {
  LayoutState out = s;
  for (int sweep = 0; sweep < 50 && overlap_sweep(out); ++sweep) {
  }

  auto disjoint = [&]() {
    const int n = out.graph.node_count();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (boxes_overlap(out.node_box(i), out.node_box(j), 1e-9)) return false;
      }
    }
    return true;
  };

  for (int col : {0, 1}) {
    for (int slides = 0; slides < 200; ++slides) {
      std::vector<double> coords;
      for (Eigen::Index i = 0; i < out.pos.rows(); ++i) {
        coords.push_back(out.pos(i, col));
      }
      std::sort(coords.begin(), coords.end());
      coords.erase(std::unique(coords.begin(), coords.end(),
                               [](double a, double b) {
                                 return std::abs(a - b) < 1e-9;
                               }),
                   coords.end());
      bool moved = false;
      for (std::size_t i = 1; i < coords.size() && !moved; ++i) {
        const double gap = coords[i] - coords[i - 1];
        double delta = gap - cell;
        if (delta <= 1e-9) continue;
        const double cut = (coords[i - 1] + coords[i]) / 2.0;
        for (int attempt = 0; attempt < 3 && !moved; ++attempt) {
          PositionMatrix saved = out.pos;
          for (Eigen::Index r = 0; r < out.pos.rows(); ++r) {
            if (out.pos(r, col) > cut) out.pos(r, col) -= delta;
          }
          if (disjoint()) {
            moved = true;
          } else {
            out.pos = saved;
            delta /= 2.0;
          }
        }
      }
      if (!moved) break;
    }
  }

  for (int e = 0; e < out.graph.edge_count(); ++e) {
    const Edge& edge = out.graph.edges()[e];
    const int a = out.graph.index_of(edge.u);
    const int b = out.graph.index_of(edge.v);
    std::vector<BoundingBox> obstacles;
    for (int i = 0; i < out.graph.node_count(); ++i) {
      if (i != a && i != b) obstacles.push_back(out.node_box(i));
    }
    out.routes[e] = route_edge(out.position(a), out.position(b), obstacles);
  }
  resolve_collinear_overlaps(out.routes, cell);
  out.stage = Stage::attached;
  return out;
}

std::string placements_to_json(const std::vector<PlacementRecord>& log) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < log.size(); ++i) {
    const PlacementRecord& r = log[i];
    if (i) out << ",";
    out << "{\"tree_root\":" << r.tree_root << ",\"face\":" << r.face_id
        << ",\"orientation\":\"" << dir_name(r.orientation) << "\""
        << ",\"flip\":" << (r.flip ? "true" : "false")
        << ",\"c_x\":" << format_coord(r.cost.c_x)
        << ",\"c_y\":" << format_coord(r.cost.c_y)
        << ",\"w_x\":" << format_coord(r.cost.w_x)
        << ",\"w_y\":" << format_coord(r.cost.w_y)
        << ",\"c_space\":" << format_coord(r.cost.c_space)
        << ",\"ar_proj\":" << format_coord(r.cost.ar_proj)
        << ",\"c_ar\":" << format_coord(r.cost.c_ar)
        << ",\"lambda\":" << format_coord(r.cost.lambda)
        << ",\"omega\":" << format_coord(r.cost.omega)
        << ",\"c_final\":" << format_coord(r.cost.c_final)
        << ",\"chosen\":" << (r.chosen ? "true" : "false") << "}";
  }
  out << "]";
  return out.str();
}

}  // namespace arcol
