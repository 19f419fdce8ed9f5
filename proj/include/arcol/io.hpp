#ifndef ARCOL_IO_HPP
#define ARCOL_IO_HPP

#include "arcol/graph.hpp"
#include "arcol/refine.hpp"

#include <optional>
#include <string>

namespace arcol {

enum class GraphFormat { json, dot, graphml };

GraphFormat format_from_name(const std::string& name);
// Guesses from the file extension; falls back to json.
GraphFormat format_from_path(const std::string& path);

struct ParseOptions {
  double default_node_size = 20.0;  // ideal_edge_length / 2 at defaults
  bool largest_component = false;
};

/// Parses a graph in one of the three supported formats, applies the
/// default box size where the format carries none, de-duplicates repeated
/// edges and validates connectivity (or extracts the largest component).
/// Throws ParseError / ValidationError.
Graph parse_graph(const std::string& input, GraphFormat format,
                  const ParseOptions& opts = {});

// Writers for the same three formats. Round-tripping through any of them
// preserves the node and edge sets.
std::string serialize_graph(const Graph& g, GraphFormat format);

/// Layout JSON: config, positions {id: [x, y]}, node sizes {id: [w, h]},
/// routes (straight endpoint pairs where unset), stage, plus the refine
/// report and baseline tag when present. All coordinates are written with
/// fixed 9-decimal precision so serialize-parse-serialize is a fixpoint.
std::string serialize_layout(const LayoutState& s, const LayoutConfig& cfg,
                             const std::optional<RefineReport>& refine = {});

struct LayoutFile {
  LayoutState state;
  LayoutConfig config;
  std::optional<RefineReport> refine;
};

/// Inverse of serialize_layout. `g` supplies the node/edge sets; the file
/// supplies geometry, sizes and stage.
LayoutFile parse_layout(const std::string& input, const Graph& g);

// Fixed-format coordinate used across all serializers ("%.9f").
std::string format_coord(double v);

}  // namespace arcol

#endif
