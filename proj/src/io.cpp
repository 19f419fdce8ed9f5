#include "arcol/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

using nlohmann::json;

namespace arcol {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

// Maps raw node names to ids: if every name is a plain non-negative
// integer the values are used directly, otherwise first-appearance order.
std::map<std::string, NodeId> assign_ids(const std::vector<std::string>& names) {
  std::map<std::string, NodeId> ids;
  const bool all_numeric = std::all_of(names.begin(), names.end(),
                                       is_integer_token);
  NodeId next = 0;
  for (const auto& name : names) {
    if (ids.count(name)) continue;
    ids[name] = all_numeric ? std::stoi(name) : next;
    ++next;
  }
  return ids;
}

struct RawGraph {
  std::vector<std::string> node_order;               // first-appearance order
  std::map<std::string, std::pair<double, double>> sizes;  // optional w/h
  std::vector<std::pair<std::string, std::string>> edges;

  void touch(const std::string& name) {
    if (std::find(node_order.begin(), node_order.end(), name) ==
        node_order.end()) {
      node_order.push_back(name);
    }
  }
};

Graph build_graph(const RawGraph& raw, const ParseOptions& opts) {
  auto ids = assign_ids(raw.node_order);
  Graph g;
  for (const auto& name : raw.node_order) {
    double w = opts.default_node_size;
    double h = opts.default_node_size;
    if (auto it = raw.sizes.find(name); it != raw.sizes.end()) {
      w = it->second.first;
      h = it->second.second;
    }
    if (!(w > 0.0) || !(h > 0.0)) {
      throw ValidationError("node '" + name + "' has a non-positive box size");
    }
    g.add_node(ids.at(name), w, h);
  }
  for (const auto& [a, b] : raw.edges) {
    if (!ids.count(a) || !ids.count(b)) {
      throw ParseError("edge references unknown node");
    }
    if (ids.at(a) == ids.at(b)) {
      throw ValidationError("self-loop at node '" + a + "'");
    }
    g.add_edge(ids.at(a), ids.at(b));  // duplicates are dropped
  }
  if (opts.largest_component) {
    g.restrict_to_largest_component();
  } else {
    g.validate_connected();
  }
  if (g.node_count() == 0) throw ValidationError("graph has no nodes");
  return g;
}

Graph parse_json_graph(const std::string& input, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges")) {
    throw ParseError("graph JSON must contain 'nodes' and 'edges'");
  }
  RawGraph raw;
  for (const auto& n : doc["nodes"]) {
    if (!n.contains("id")) throw ParseError("node without 'id'");
    const std::string name = std::to_string(n["id"].get<long long>());
    raw.touch(name);
    if (n.contains("w") || n.contains("h")) {
      const double w = n.value("w", opts.default_node_size);
      const double h = n.value("h", opts.default_node_size);
      raw.sizes[name] = {w, h};
    }
  }
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("edge must be a pair [u, v]");
    }
    raw.edges.emplace_back(std::to_string(e[0].get<long long>()),
                           std::to_string(e[1].get<long long>()));
  }
  return build_graph(raw, opts);
}

// --- DOT (undirected subset) ---

struct DotLexer {
  std::string src;
  std::size_t i = 0;

  void skip_ws() {
    while (i < src.size()) {
      if (std::isspace(static_cast<unsigned char>(src[i]))) {
        ++i;
      } else if (src[i] == '#') {
        while (i < src.size() && src[i] != '\n') ++i;
      } else if (src.compare(i, 2, "//") == 0) {
        while (i < src.size() && src[i] != '\n') ++i;
      } else if (src.compare(i, 2, "/*") == 0) {
        const auto end = src.find("*/", i + 2);
        if (end == std::string::npos) throw ParseError("unterminated comment");
        i = end + 2;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return i >= src.size();
  }

  char peek() {
    skip_ws();
    return i < src.size() ? src[i] : '\0';
  }

  bool consume(const std::string& tok) {
    skip_ws();
    if (src.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    if (i >= src.size()) throw ParseError("unexpected end of DOT input");
    if (src[i] == '"') {
      std::string out;
      ++i;
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\\' && i + 1 < src.size()) ++i;
        out += src[i++];
      }
      if (i >= src.size()) throw ParseError("unterminated quoted id");
      ++i;
      return out;
    }
    std::string out;
    while (i < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[i])) ||
            src[i] == '_' || src[i] == '.' || src[i] == '-')) {
      // '-' only as part of a number, not the '--' operator
      if (src[i] == '-' && i + 1 < src.size() && src[i + 1] == '-') break;
      out += src[i++];
    }
    if (out.empty()) throw ParseError(std::string("unexpected character '") +
                                      src[i] + "' in DOT input");
    return out;
  }
};

Graph parse_dot_graph(const std::string& input, const ParseOptions& opts) {
  DotLexer lex{input};
  if (lex.consume("strict")) {
  }
  if (lex.consume("digraph")) {
    throw ParseError("directed DOT graphs are not supported");
  }
  if (!lex.consume("graph")) throw ParseError("expected 'graph'");
  if (lex.peek() != '{') lex.identifier();  // optional graph name
  if (!lex.consume("{")) throw ParseError("expected '{'");

  RawGraph raw;
  while (!lex.eof() && lex.peek() != '}') {
    if (lex.consume(";")) continue;
    std::string head = lex.identifier();
    if (head == "node" || head == "edge" || head == "graph") {
      // default attribute statement: skip its [...] block
      if (lex.consume("[")) {
        while (!lex.eof() && !lex.consume("]")) ++lex.i;
      }
      continue;
    }
    raw.touch(head);
    std::vector<std::string> chain{head};
    while (lex.consume("--")) {
      std::string next = lex.identifier();
      raw.touch(next);
      chain.push_back(next);
    }
    for (std::size_t k = 1; k < chain.size(); ++k) {
      raw.edges.emplace_back(chain[k - 1], chain[k]);
    }
    if (lex.consume("[")) {
      // attribute list; width/height picked up for node statements
      double w = 0.0, h = 0.0;
      while (!lex.eof() && lex.peek() != ']') {
        if (lex.consume(",")) continue;
        std::string key = lex.identifier();
        if (!lex.consume("=")) throw ParseError("expected '=' in attribute");
        std::string value = lex.identifier();
        if (key == "width") w = std::stod(value);
        if (key == "height") h = std::stod(value);
      }
      if (!lex.consume("]")) throw ParseError("expected ']'");
      if (chain.size() == 1 && w > 0.0 && h > 0.0) {
        raw.sizes[head] = {w, h};
      }
    }
  }
  if (!lex.consume("}")) throw ParseError("expected '}'");
  return build_graph(raw, opts);
}

// --- GraphML (scanning subset: node/edge elements and their attributes) ---

std::string xml_attr(const std::string& tag, const std::string& name) {
  const std::string needle = name + "=\"";
  const auto p = tag.find(needle);
  if (p == std::string::npos) return {};
  const auto q = tag.find('"', p + needle.size());
  if (q == std::string::npos) return {};
  return tag.substr(p + needle.size(), q - p - needle.size());
}

Graph parse_graphml_graph(const std::string& input, const ParseOptions& opts) {
  RawGraph raw;
  std::size_t i = 0;
  bool saw_graph = false;
  while ((i = input.find('<', i)) != std::string::npos) {
    if (input.compare(i, 4, "<!--") == 0) {
      const auto end = input.find("-->", i);
      if (end == std::string::npos) throw ParseError("unterminated XML comment");
      i = end + 3;
      continue;
    }
    const auto close = input.find('>', i);
    if (close == std::string::npos) throw ParseError("unterminated XML tag");
    const std::string tag = input.substr(i + 1, close - i - 1);
    i = close + 1;
    if (tag.rfind("graph ", 0) == 0 || tag == "graph") saw_graph = true;
    if (tag.rfind("node", 0) == 0 &&
        (tag.size() == 4 || !std::isalnum(static_cast<unsigned char>(tag[4])))) {
      const std::string id = xml_attr(tag, "id");
      if (id.empty()) throw ParseError("GraphML node without id");
      raw.touch(id);
    } else if (tag.rfind("edge", 0) == 0 &&
               (tag.size() == 4 ||
                !std::isalnum(static_cast<unsigned char>(tag[4])))) {
      const std::string s = xml_attr(tag, "source");
      const std::string t = xml_attr(tag, "target");
      if (s.empty() || t.empty()) {
        throw ParseError("GraphML edge without source/target");
      }
      raw.touch(s);
      raw.touch(t);
      raw.edges.emplace_back(s, t);
    }
  }
  if (!saw_graph) throw ParseError("no <graph> element found");
  return build_graph(raw, opts);
}

}  // namespace

GraphFormat format_from_name(const std::string& name) {
  if (name == "json") return GraphFormat::json;
  if (name == "dot") return GraphFormat::dot;
  if (name == "graphml") return GraphFormat::graphml;
  throw ParseError("unknown graph format '" + name + "'");
}

GraphFormat format_from_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    const std::string ext = path.substr(dot + 1);
    if (ext == "dot" || ext == "gv") return GraphFormat::dot;
    if (ext == "graphml" || ext == "xml") return GraphFormat::graphml;
  }
  return GraphFormat::json;
}

Graph parse_graph(const std::string& input, GraphFormat format,
                  const ParseOptions& opts) {
  switch (format) {
    case GraphFormat::json: return parse_json_graph(input, opts);
    case GraphFormat::dot: return parse_dot_graph(input, opts);
    default: return parse_graphml_graph(input, opts);
  }
}

std::string format_coord(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::string serialize_graph(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  switch (format) {
    case GraphFormat::json: {
      out << "{\"nodes\":[";
      for (int i = 0; i < g.node_count(); ++i) {
        const NodeInfo& n = g.nodes()[i];
        if (i) out << ",";
        out << "{\"id\":" << n.id << ",\"w\":" << format_coord(n.w)
            << ",\"h\":" << format_coord(n.h) << "}";
      }
      out << "],\"edges\":[";
      auto edges = g.edges();
      std::sort(edges.begin(), edges.end());
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out << ",";
        out << "[" << edges[i].u << "," << edges[i].v << "]";
      }
      out << "]}";
      break;
    }
    case GraphFormat::dot: {
      out << "graph {\n";
      for (const NodeInfo& n : g.nodes()) {
        out << "  " << n.id << " [width=" << format_coord(n.w)
            << ", height=" << format_coord(n.h) << "];\n";
      }
      auto edges = g.edges();
      std::sort(edges.begin(), edges.end());
      for (const Edge& e : edges) {
        out << "  " << e.u << " -- " << e.v << ";\n";
      }
      out << "}\n";
      break;
    }
    case GraphFormat::graphml: {
      out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
          << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
      for (const NodeInfo& n : g.nodes()) {
        out << "    <node id=\"" << n.id << "\"/>\n";
      }
      auto edges = g.edges();
      std::sort(edges.begin(), edges.end());
      for (const Edge& e : edges) {
        out << "    <edge source=\"" << e.u << "\" target=\"" << e.v
            << "\"/>\n";
      }
      out << "  </graph>\n</graphml>\n";
      break;
    }
  }
  return out.str();
}

namespace {

void write_config(std::ostringstream& out, const LayoutConfig& cfg) {
  out << "{\"target_ar\":" << format_coord(cfg.target_ar.value)
      << ",\"ideal_edge_length\":" << format_coord(cfg.ideal_edge_length)
      << ",\"restarts\":" << cfg.restarts << ",\"seed\":" << cfg.seed
      << ",\"beta\":" << format_coord(cfg.beta)
      << ",\"discount\":" << format_coord(cfg.discount)
      << ",\"omega_factor\":" << format_coord(cfg.omega_factor)
      << ",\"refine_tolerance\":" << format_coord(cfg.refine_tolerance)
      << ",\"refine_fraction\":" << format_coord(cfg.refine_fraction)
      << ",\"refine_cap\":" << format_coord(cfg.refine_cap)
      << ",\"force_fit\":" << (cfg.force_fit ? "true" : "false")
      << ",\"max_stress_iterations\":" << cfg.max_stress_iterations
      << ",\"stress_tolerance\":" << format_coord(cfg.stress_tolerance)
      << ",\"baseline\":" << (cfg.baseline ? "true" : "false") << "}";
}

}  // namespace

std::string serialize_layout(const LayoutState& s, const LayoutConfig& cfg,
                             const std::optional<RefineReport>& refine) {
  std::ostringstream out;
  out << "{\"config\":";
  write_config(out, cfg);
  out << ",\"positions\":{";
  for (int i = 0; i < s.graph.node_count(); ++i) {
    const NodeInfo& n = s.graph.nodes()[i];
    if (i) out << ",";
    out << "\"" << n.id << "\":[" << format_coord(s.pos(i, 0)) << ","
        << format_coord(s.pos(i, 1)) << "]";
  }
  out << "},\"sizes\":{";
  for (int i = 0; i < s.graph.node_count(); ++i) {
    const NodeInfo& n = s.graph.nodes()[i];
    if (i) out << ",";
    out << "\"" << n.id << "\":[" << format_coord(n.w) << ","
        << format_coord(n.h) << "]";
  }
  out << "},\"routes\":[";
  for (int e = 0; e < s.graph.edge_count(); ++e) {
    if (e) out << ",";
    out << "[";
    const Polyline route = s.route_or_straight(e);
    for (std::size_t k = 0; k < route.size(); ++k) {
      if (k) out << ",";
      out << "[" << format_coord(route[k].x()) << ","
          << format_coord(route[k].y()) << "]";
    }
    out << "]";
  }
  out << "],\"stage\":\"" << stage_name(s.stage) << "\"";
  if (s.post_scaled_baseline) out << ",\"baseline\":\"post-scaled\"";
  if (refine) {
    out << ",\"refine\":{\"ar_before\":" << format_coord(refine->ar_before)
        << ",\"ar_after\":" << format_coord(refine->ar_after)
        << ",\"s_x_applied\":" << format_coord(refine->s_x_applied)
        << ",\"s_y_applied\":" << format_coord(refine->s_y_applied)
        << ",\"skipped\":" << (refine->skipped ? "true" : "false")
        << ",\"capped\":" << (refine->capped ? "true" : "false") << "}";
  }
  out << "}";
  return out.str();
}

LayoutFile parse_layout(const std::string& input, const Graph& g) {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid layout JSON: ") + e.what());
  }
  LayoutFile file;
  file.state = make_layout(g);
  if (doc.contains("config")) {
    const json& c = doc["config"];
    LayoutConfig& cfg = file.config;
    cfg.target_ar = AspectRatioTarget(c.value("target_ar", 1.0));
    cfg.ideal_edge_length = c.value("ideal_edge_length", 40.0);
    cfg.restarts = c.value("restarts", 5);
    cfg.seed = c.value("seed", std::uint64_t{0});
    cfg.beta = c.value("beta", 0.75);
    cfg.discount = c.value("discount", 0.85);
    cfg.omega_factor = c.value("omega_factor", 1.0);
    cfg.refine_tolerance = c.value("refine_tolerance", 0.15);
    cfg.refine_fraction = c.value("refine_fraction", 0.30);
    cfg.refine_cap = c.value("refine_cap", 0.20);
    cfg.force_fit = c.value("force_fit", false);
    cfg.max_stress_iterations = c.value("max_stress_iterations", 200);
    cfg.stress_tolerance = c.value("stress_tolerance", 1e-4);
    cfg.baseline = c.value("baseline", false);
  }
  if (!doc.contains("positions")) throw ParseError("layout without positions");
  for (int i = 0; i < g.node_count(); ++i) {
    const std::string key = std::to_string(g.nodes()[i].id);
    if (!doc["positions"].contains(key)) {
      throw ParseError("layout is missing a position for node " + key);
    }
    const json& p = doc["positions"][key];
    file.state.set_position(i, {p[0].get<double>(), p[1].get<double>()});
    if (doc.contains("sizes") && doc["sizes"].contains(key)) {
      const json& sz = doc["sizes"][key];
      NodeInfo& n = file.state.graph.node(g.nodes()[i].id);
      n.w = sz[0].get<double>();
      n.h = sz[1].get<double>();
    }
  }
  if (doc.contains("routes")) {
    const json& routes = doc["routes"];
    if (static_cast<int>(routes.size()) != g.edge_count()) {
      throw ParseError("route count does not match the graph's edge count");
    }
    for (int e = 0; e < g.edge_count(); ++e) {
      Polyline line;
      for (const auto& pt : routes[e]) {
        line.push_back({pt[0].get<double>(), pt[1].get<double>()});
      }
      file.state.routes[e] = std::move(line);
    }
  }
  file.state.stage = stage_from_name(doc.value("stage", "distributed"));
  file.state.post_scaled_baseline = doc.value("baseline", "") == "post-scaled";
  if (doc.contains("refine")) {
    const json& r = doc["refine"];
    RefineReport rep;
    rep.ar_before = r.value("ar_before", 1.0);
    rep.ar_after = r.value("ar_after", 1.0);
    rep.s_x_applied = r.value("s_x_applied", 1.0);
    rep.s_y_applied = r.value("s_y_applied", 1.0);
    rep.skipped = r.value("skipped", false);
    rep.capped = r.value("capped", false);
    file.refine = rep;
  }
  return file;
}

}  // namespace arcol
