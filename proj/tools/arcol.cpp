// arcol: aspect-ratio constrained orthogonal graph layout.
//
//   arcol layout  --input g.json --ar 16:9 --seed 42 --out l.json --svg l.svg
//   arcol metrics --input l.json --graph g.json [--csv]
//   arcol compare --corpus dir --ars 1:3,1:1,16:9 --out report/

#include "arcol/io.hpp"
#include "arcol/metrics.hpp"
#include "arcol/orthogonalize.hpp"
#include "arcol/pipeline.hpp"
#include "arcol/svg.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace arcol;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitPipelineError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (const fs::path dir = fs::path(path).parent_path(); !dir.empty()) {
    fs::create_directories(dir);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

// Minimal TOML subset: `key = value` lines, # comments, bare/quoted values.
void apply_toml_config(const std::string& text, nlohmann::json& doc) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) continue;
    if (value.front() == '"' && value.back() == '"' && value.size() >= 2) {
      doc[key] = value.substr(1, value.size() - 2);
    } else if (value == "true" || value == "false") {
      doc[key] = value == "true";
    } else {
      try {
        if (value.find_first_of(".eE") == std::string::npos) {
          doc[key] = std::stoll(value);
        } else {
          doc[key] = std::stod(value);
        }
      } catch (const std::exception&) {
        doc[key] = value;
      }
    }
  }
}

LayoutConfig config_from_file(const std::string& path) {
  nlohmann::json doc;
  const std::string text = read_file(path);
  if (fs::path(path).extension() == ".toml") {
    apply_toml_config(text, doc);
  } else {
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("config file: ") + e.what());
    }
  }
  LayoutConfig cfg;
  if (doc.contains("target_ar")) {
    if (doc["target_ar"].is_string()) {
      cfg.target_ar = parse_aspect_ratio(doc["target_ar"].get<std::string>());
    } else {
      cfg.target_ar = AspectRatioTarget(doc["target_ar"].get<double>());
    }
  }
  cfg.ideal_edge_length = doc.value("ideal_edge_length", cfg.ideal_edge_length);
  cfg.restarts = doc.value("restarts", cfg.restarts);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.beta = doc.value("beta", cfg.beta);
  cfg.discount = doc.value("discount", cfg.discount);
  cfg.omega_factor = doc.value("omega_factor", cfg.omega_factor);
  cfg.refine_tolerance = doc.value("refine_tolerance", cfg.refine_tolerance);
  cfg.refine_fraction = doc.value("refine_fraction", cfg.refine_fraction);
  cfg.refine_cap = doc.value("refine_cap", cfg.refine_cap);
  cfg.force_fit = doc.value("force_fit", cfg.force_fit);
  cfg.max_stress_iterations =
      doc.value("max_stress_iterations", cfg.max_stress_iterations);
  cfg.stress_tolerance = doc.value("stress_tolerance", cfg.stress_tolerance);
  return cfg;
}

std::uint64_t seed_fallback() {
  if (const char* env = std::getenv("ARCOL_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

struct LayoutArgs {
  std::string input;
  std::string format = "auto";
  std::string ar = "1:1";
  std::string out;
  std::string svg;
  std::string config_file;
  std::string post_scale;
  std::string dump_decomposition;
  std::string dump_grid;
  std::string dump_placements;
  std::string trace_stress;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int restarts = 0;
  double ideal_edge_length = 0.0;
  bool force_fit = false;
  bool baseline = false;
  bool no_refine = false;
  bool largest_component = false;
};

Graph load_graph(const std::string& path, const std::string& format,
                 const LayoutConfig& cfg, bool largest_component) {
  const GraphFormat fmt = format == "auto" ? format_from_path(path)
                                           : format_from_name(format);
  ParseOptions opts;
  opts.default_node_size = cfg.default_node_size();
  opts.largest_component = largest_component;
  return parse_graph(read_file(path), fmt, opts);
}

int cmd_layout(const LayoutArgs& args) {
  LayoutConfig cfg = args.config_file.empty()
                         ? LayoutConfig{}
                         : config_from_file(args.config_file);
  cfg.target_ar = parse_aspect_ratio(args.ar);
  if (args.seed_given) {
    cfg.seed = args.seed;
  } else if (args.config_file.empty()) {
    cfg.seed = seed_fallback();
  }
  if (args.restarts > 0) cfg.restarts = args.restarts;
  if (args.ideal_edge_length > 0.0) cfg.ideal_edge_length = args.ideal_edge_length;
  cfg.force_fit = args.force_fit || cfg.force_fit;
  cfg.baseline = args.baseline;
  if (args.no_refine) {
    cfg.refine_fraction = 0.0;
    cfg.refine_tolerance = std::numeric_limits<double>::infinity();
  }
  cfg.validate();

  const Graph g = load_graph(args.input, args.format, cfg,
                             args.largest_component);

  std::ofstream trace_out;
  TraceSink trace;
  if (!args.trace_stress.empty()) {
    trace_out.open(args.trace_stress);
    trace_out << "restart,iteration,stress,ar_proxy\n";
    trace = [&trace_out](const TraceRow& row) {
      trace_out << row.restart << "," << row.iteration << ","
                << format_coord(row.stress) << "," << format_coord(row.ar_proxy)
                << "\n";
    };
  }

  PipelineResult result = run_pipeline(g, cfg, trace);
  LayoutState final_layout = result.layout;
  if (!args.post_scale.empty()) {
    final_layout =
        post_scale_baseline(final_layout, parse_aspect_ratio(args.post_scale));
  }

  if (!args.dump_decomposition.empty()) {
    write_file(args.dump_decomposition,
               decomposition_to_json(result.decomposition));
  }
  if (!args.dump_placements.empty()) {
    write_file(args.dump_placements, placements_to_json(result.placements));
  }
  if (!args.dump_grid.empty()) {
    // grid of the final drawing at the configured pitch
    GridLayout gl = snap_to_grid(final_layout, cfg.ideal_edge_length);
    write_file(args.dump_grid, grid_to_json(gl, final_layout.graph));
  }

  const std::string layout_json =
      serialize_layout(final_layout, cfg, result.refine);
  if (!args.out.empty()) {
    write_file(args.out, layout_json);
  } else {
    std::cout << layout_json << "\n";
  }
  if (!args.svg.empty()) {
    RenderOptions ropts;
    ropts.show_target_frame = true;
    ropts.target_ar = cfg.target_ar;
    write_file(args.svg, render_svg(final_layout, ropts));
  }
  std::cerr << "layout: ar=" << format_coord(result.metrics.ar)
            << " target=" << format_coord(cfg.target_ar.value)
            << " stress_runs=" << cfg.restarts
            << " residual_overlaps=" << result.distribution.residual_overlaps
            << "\n";
  return kExitOk;
}

int cmd_metrics(const std::string& layout_path, const std::string& graph_path,
                const std::string& format, bool csv) {
  LayoutConfig defaults;
  const Graph g = load_graph(graph_path, format, defaults, false);
  const LayoutFile file = parse_layout(read_file(layout_path), g);
  const Eigen::MatrixXd d =
      graph_distances(g, file.config.ideal_edge_length);
  const MetricsReport m = report(file.state, d);
  if (csv) {
    std::cout << metrics_csv_header() << "\n"
              << metrics_csv_row(graph_path, format_coord(file.config.target_ar.value),
                                 file.state.post_scaled_baseline ? "post_scaled"
                                                                 : "layout",
                                 m)
              << "\n";
  } else {
    std::cout << metrics_to_json(m) << "\n";
  }
  return kExitOk;
}

int cmd_compare(const std::string& corpus, const std::string& ars,
                const std::string& out_dir, const std::string& config_file,
                std::uint64_t seed, bool seed_given) {
  LayoutConfig cfg =
      config_file.empty() ? LayoutConfig{} : config_from_file(config_file);
  if (seed_given) {
    cfg.seed = seed;
  } else if (config_file.empty()) {
    cfg.seed = seed_fallback();
  }

  std::vector<NamedGraph> graphs;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".json" || ext == ".dot" || ext == ".gv" || ext == ".graphml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    graphs.push_back({path.stem().string(),
                      load_graph(path.string(), "auto", cfg, false)});
  }
  if (graphs.empty()) throw ParseError("no graph files in '" + corpus + "'");

  std::vector<AspectRatioTarget> targets;
  std::istringstream ss(ars);
  std::string token;
  while (std::getline(ss, token, ',')) {
    targets.push_back(parse_aspect_ratio(token));
  }
  if (targets.empty()) throw ParseError("no aspect ratios given");

  CompareSink sink = [&](const CompareCell& cell, const std::string& variant,
                         const LayoutState& layout) {
    RenderOptions ropts;
    ropts.show_target_frame = true;
    ropts.target_ar = AspectRatioTarget(cell.target);
    const std::string name = cell.graph_name + "_" + cell.target_name + "_" +
                             variant + ".svg";
    write_file((fs::path(out_dir) / "svg" / name).string(),
               render_svg(layout, ropts));
  };
  const CompareResult result = compare(graphs, targets, cfg, sink);
  write_file((fs::path(out_dir) / "metrics.csv").string(), result.to_csv());
  std::cout << result.to_csv();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aspect-ratio constrained orthogonal graph layout"};
  app.require_subcommand(1);

  LayoutArgs largs;
  CLI::App* layout = app.add_subcommand("layout", "run the layout pipeline");
  layout->add_option("--input", largs.input, "graph file")->required();
  layout->add_option("--format", largs.format, "json|dot|graphml|auto");
  layout->add_option("--ar", largs.ar, "target aspect ratio (W:H or decimal)");
  layout->add_option("--seed", largs.seed, "random seed")
      ->each([&](const std::string&) { largs.seed_given = true; });
  layout->add_option("--restarts", largs.restarts, "optimization restarts");
  layout->add_option("--ideal-edge-length", largs.ideal_edge_length,
                     "grid pitch in layout units");
  layout->add_option("--out", largs.out, "layout JSON output path");
  layout->add_option("--svg", largs.svg, "SVG output path");
  layout->add_option("--config", largs.config_file, "TOML/JSON config file");
  layout->add_option("--post-scale", largs.post_scale,
                     "exact-fit the result to this ratio afterwards");
  layout->add_flag("--force-fit", largs.force_fit, "exact final fit");
  layout->add_flag("--baseline", largs.baseline,
                   "disable all aspect-ratio mechanisms");
  layout->add_flag("--no-refine", largs.no_refine, "skip the final rescale");
  layout->add_flag("--largest-component", largs.largest_component,
                   "extract the largest component instead of failing");
  layout->add_option("--dump-decomposition", largs.dump_decomposition,
                     "write the core/tree split as JSON");
  layout->add_option("--dump-grid", largs.dump_grid, "write the grid as JSON");
  layout->add_option("--dump-placements", largs.dump_placements,
                     "write every scored tree placement as JSON");
  layout->add_option("--trace-stress", largs.trace_stress,
                     "write per-iteration stress/ar CSV");

  std::string m_layout, m_graph, m_format = "auto";
  bool m_csv = false;
  CLI::App* metrics = app.add_subcommand("metrics", "score a layout");
  metrics->add_option("--input", m_layout, "layout JSON")->required();
  metrics->add_option("--graph", m_graph, "graph file")->required();
  metrics->add_option("--format", m_format, "graph format");
  metrics->add_flag("--csv", m_csv, "emit a CSV row");

  std::string c_corpus, c_out = "report";
  std::string c_ars = "1:3,9:16,1:1,4:3,16:9,21:9,32:9";
  std::string c_config;
  std::uint64_t c_seed = 0;
  bool c_seed_given = false;
  CLI::App* cmp = app.add_subcommand("compare", "corpus comparison table");
  cmp->add_option("--corpus", c_corpus, "directory of graph files")->required();
  cmp->add_option("--ars", c_ars, "comma-separated aspect ratios");
  cmp->add_option("--out", c_out, "report directory");
  cmp->add_option("--config", c_config, "TOML/JSON config file");
  cmp->add_option("--seed", c_seed, "random seed")
      ->each([&](const std::string&) { c_seed_given = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (layout->parsed()) return cmd_layout(largs);
    if (metrics->parsed()) return cmd_metrics(m_layout, m_graph, m_format, m_csv);
    if (cmp->parsed()) {
      return cmd_compare(c_corpus, c_ars, c_out, c_config, c_seed, c_seed_given);
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "pipeline error: " << e.what() << "\n";
    return kExitPipelineError;
  }
  return kExitOk;
}
