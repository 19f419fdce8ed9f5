#ifndef ARCOL_DISTRIBUTION_HPP
#define ARCOL_DISTRIBUTION_HPP

#include "arcol/graph.hpp"

#include <cstdint>
#include <functional>

namespace arcol {

/// Centroids and coordinate variances of the node centers; sigma_x/sigma_y
/// is the working aspect-ratio proxy. Population variances (divide by N).
struct SpreadStats {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double ar_proxy = 1.0;
  bool degenerate = false;  // a variance fell below the collinearity guard
};

// Guard for near-zero variances: 1e-9 * ideal_edge_length^2.
double variance_epsilon(double ideal_edge_length);

SpreadStats spread_stats(const PositionMatrix& pos, double ideal_edge_length);
SpreadStats spread_stats(const LayoutState& s, double ideal_edge_length);

/// One anisotropic rescale about the centroid with s_x = (AR*/AR_cur)^(1/4)
/// and s_y = 1/s_x. Removes exactly half of the log aspect-ratio error and
/// conserves sigma_x * sigma_y. Degenerate spreads are left untouched.
void normalize_ar(PositionMatrix& pos, AspectRatioTarget target,
                  double ideal_edge_length);
LayoutState normalize_ar(const LayoutState& s, AspectRatioTarget target,
                         double ideal_edge_length);

/// Weighted stress sum_{i<j} d_ij^-2 (||p_i - p_j|| - d_ij)^2.
double stress(const PositionMatrix& pos, const Eigen::MatrixXd& d);
double stress(const LayoutState& s, const Eigen::MatrixXd& d);

/// One majorization sweep: every node moves to the weighted barycenter of
/// its ideal offsets (Gauss-Seidel order, so stress never increases).
void stress_minimize_step(PositionMatrix& pos, const Eigen::MatrixXd& d);
LayoutState stress_minimize_step(const LayoutState& s, const Eigen::MatrixXd& d);

/// One pass over all overlapping box pairs; each pair separates along the
/// axis of least penetration, displacement split equally. Returns true if
/// anything moved.
bool overlap_sweep(LayoutState& s);

struct OverlapReport {
  int sweeps = 0;
  int residual_pairs = 0;  // pairs still overlapping after the last sweep
};

/// Runs overlap sweeps until clean or 50 sweeps elapsed (best effort).
LayoutState remove_overlaps(const LayoutState& s, OverlapReport* report = nullptr);

struct RunResult {
  LayoutState layout;
  double final_stress = 0.0;
  double final_ar = 1.0;  // spread proxy at the end of the run
  double ar_error = 0.0;  // |log(final_ar / target)|
  int iterations = 0;
  int restart_index = 0;
  int residual_overlaps = 0;
};

// Per-iteration trace rows for --trace-stress.
struct TraceRow {
  int restart = 0;
  int iteration = 0;
  double stress = 0.0;
  double ar_proxy = 0.0;
};
using TraceSink = std::function<void(const TraceRow&)>;

/// Stress-minimizing placement of the core: cfg.restarts independent runs
/// from seeded random starts, each iterating majorization + normalization
/// to convergence, then overlap removal with the normalization interleaved.
/// Picks the run with the smallest aspect-ratio error, ties broken by
/// stress, then restart index. With cfg.baseline the normalization is off
/// and selection is by stress alone.
RunResult distribution_phase(const Graph& core, const LayoutConfig& cfg,
                             const TraceSink& trace = {});

}  // namespace arcol

#endif
