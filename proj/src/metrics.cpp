#include "arcol/metrics.hpp"

#include "arcol/io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace arcol {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double metric_ksm(const LayoutState& s, const Eigen::MatrixXd& d) {
  const int n = s.graph.node_count();
  if (n < 2) return 1.0;
  double num_scale = 0.0;
  double den_scale = 0.0;
  double d_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dist = (s.position(i) - s.position(j)).norm();
      num_scale += d(i, j) * dist;
      den_scale += dist * dist;
      d_sq += d(i, j) * d(i, j);
    }
  }
  const double sigma = den_scale > 0.0 ? num_scale / den_scale : 0.0;
  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dist = (s.position(i) - s.position(j)).norm();
      const double diff = d(i, j) - sigma * dist;
      residual += diff * diff;
    }
  }
  return clamp01(1.0 - std::sqrt(residual / d_sq));
}

double metric_eld(const LayoutState& s) {
  const int m = s.graph.edge_count();
  if (m == 0) return 1.0;
  std::vector<double> lengths(m);
  for (int e = 0; e < m; ++e) lengths[e] = polyline_length(s.route_or_straight(e));
  const double mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) / m;
  if (mean <= 0.0) return 0.0;
  double var = 0.0;
  for (double len : lengths) var += (len - mean) * (len - mean);
  var /= m;
  return 1.0 - std::min(1.0, std::sqrt(var) / mean);
}

double metric_nr(const LayoutState& s) {
  const int n = s.graph.node_count();
  if (n < 2) return 1.0;
  double min_d = std::numeric_limits<double>::infinity();
  double max_d = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dist = (s.position(i) - s.position(j)).norm();
      min_d = std::min(min_d, dist);
      max_d = std::max(max_d, dist);
    }
  }
  return max_d > 0.0 ? min_d / max_d : 0.0;
}

double metric_nu(const LayoutState& s) {
  const int n = s.graph.node_count();
  if (n < 2) return 1.0;
  BoundingBox box;
  for (int i = 0; i < n; ++i) box.expand(s.position(i));
  if (box.width() <= 0.0 || box.height() <= 0.0) return 0.0;
  const int k = static_cast<int>(std::ceil(std::sqrt(double(n))));
  std::vector<int> counts(k * k, 0);
  for (int i = 0; i < n; ++i) {
    const int cx = std::min(
        k - 1, static_cast<int>((s.pos(i, 0) - box.min_x) / box.width() * k));
    const int cy = std::min(
        k - 1, static_cast<int>((s.pos(i, 1) - box.min_y) / box.height() * k));
    ++counts[cy * k + cx];
  }
  const double expected = double(n) / (k * k);
  double dev = 0.0;
  for (int c : counts) dev += std::abs(c - expected);
  const double worst = 2.0 * n * (1.0 - 1.0 / (k * k));
  return clamp01(1.0 - dev / worst);
}

double metric_np(const LayoutState& s) {
  const int n = s.graph.node_count();
  if (n < 2) return 1.0;
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    const int deg = s.graph.degree(v);
    if (deg == 0) continue;
    std::vector<int> others;
    for (int u = 0; u < n; ++u) {
      if (u != v) others.push_back(u);
    }
    std::sort(others.begin(), others.end(), [&](int a, int b) {
      const double da = (s.position(a) - s.position(v)).norm();
      const double db = (s.position(b) - s.position(v)).norm();
      if (da != db) return da < db;
      return s.graph.nodes()[a].id < s.graph.nodes()[b].id;
    });
    others.resize(deg);
    std::sort(others.begin(), others.end());
    const auto& adj = s.graph.neighbors(v);  // sorted
    std::vector<int> inter;
    std::set_intersection(others.begin(), others.end(), adj.begin(), adj.end(),
                          std::back_inserter(inter));
    const double uni = double(deg) * 2 - double(inter.size());
    total += inter.size() / uni;
  }
  return total / n;
}

int crossing_count(const LayoutState& s) {
  const int m = s.graph.edge_count();
  int count = 0;
  std::vector<Polyline> routes(m);
  for (int e = 0; e < m; ++e) routes[e] = s.route_or_straight(e);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Edge& a = s.graph.edges()[i];
      const Edge& b = s.graph.edges()[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
      for (std::size_t p = 1; p < routes[i].size(); ++p) {
        for (std::size_t q = 1; q < routes[j].size(); ++q) {
          if (proper_crossing({routes[i][p - 1], routes[i][p]},
                              {routes[j][q - 1], routes[j][q]})) {
            ++count;
          }
        }
      }
    }
  }
  return count;
}

double metric_ec(const LayoutState& s) {
  const int m = s.graph.edge_count();
  long pairs = long(m) * (m - 1) / 2;
  for (int v = 0; v < s.graph.node_count(); ++v) {
    const long deg = s.graph.degree(v);
    pairs -= deg * (deg - 1) / 2;
  }
  if (pairs <= 0) return 1.0;
  return clamp01(1.0 - double(crossing_count(s)) / double(pairs));
}

double metric_ar(const LayoutState& s) {
  return bounding_box(s).aspect_ratio();
}

MetricsReport report(const LayoutState& s, const Eigen::MatrixXd& d) {
  MetricsReport m;
  m.ar = metric_ar(s);
  m.ksm = metric_ksm(s, d);
  m.eld = metric_eld(s);
  m.nr = metric_nr(s);
  m.nu = metric_nu(s);
  m.np = metric_np(s);
  m.ec = metric_ec(s);
  return m;
}

std::string metrics_to_json(const MetricsReport& m) {
  std::ostringstream out;
  out << "{\"ar\":" << format_coord(m.ar) << ",\"ksm\":" << format_coord(m.ksm)
      << ",\"eld\":" << format_coord(m.eld) << ",\"nr\":" << format_coord(m.nr)
      << ",\"nu\":" << format_coord(m.nu) << ",\"np\":" << format_coord(m.np)
      << ",\"ec\":" << format_coord(m.ec) << "}";
  return out.str();
}

std::string metrics_csv_header() {
  return "graph,target,method,ar,ksm,eld,nr,nu,np,ec";
}

std::string metrics_csv_row(const std::string& graph, const std::string& target,
                            const std::string& method, const MetricsReport& m) {
  std::ostringstream out;
  out << graph << "," << target << "," << method << "," << format_coord(m.ar)
      << "," << format_coord(m.ksm) << "," << format_coord(m.eld) << ","
      << format_coord(m.nr) << "," << format_coord(m.nu) << ","
      << format_coord(m.np) << "," << format_coord(m.ec);
  return out.str();
}

}  // namespace arcol
