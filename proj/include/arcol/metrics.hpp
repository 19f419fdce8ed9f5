#ifndef ARCOL_METRICS_HPP
#define ARCOL_METRICS_HPP

#include "arcol/graph.hpp"

#include <string>

namespace arcol {

/// The seven layout-quality scores, all in [0, 1], higher better (ar is
/// the raw bounding-box ratio).
struct MetricsReport {
  double ar = 1.0;
  double ksm = 0.0;
  double eld = 0.0;
  double nr = 0.0;
  double nu = 0.0;
  double np = 0.0;
  double ec = 0.0;
};

/// Kruskal stress under the optimal global scale sigma (closed form), as
/// 1 - sqrt(sum (d - sigma * dist)^2 / sum d^2), clamped to [0, 1].
double metric_ksm(const LayoutState& s, const Eigen::MatrixXd& d);

/// 1 - coefficient of variation of route arc lengths (capped at 1).
double metric_eld(const LayoutState& s);

/// Min over max pairwise center distance.
double metric_nr(const LayoutState& s);

/// Cell-occupancy uniformity over a ceil(sqrt(N)) square grid.
double metric_nu(const LayoutState& s);

/// Mean Jaccard similarity between graph neighbors and the same number of
/// Euclidean nearest neighbors (ties by node id).
double metric_np(const LayoutState& s);

/// Number of proper route crossings between edges without a shared
/// endpoint (each crossing point counts once).
int crossing_count(const LayoutState& s);

/// 1 - crossings / possible crossings, where the possible count excludes
/// adjacent edge pairs; 1 when no pair can cross.
double metric_ec(const LayoutState& s);

double metric_ar(const LayoutState& s);

MetricsReport report(const LayoutState& s, const Eigen::MatrixXd& d);

std::string metrics_to_json(const MetricsReport& m);
// Header + row helpers for the CSV tables.
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& graph, const std::string& target,
                            const std::string& method, const MetricsReport& m);

}  // namespace arcol

#endif
