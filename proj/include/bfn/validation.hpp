#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bfn/estimator.hpp"

namespace bfn {

/// max_m |y_m - Y_m|; throws GridMismatchError when the records differ in sampling.
double output_equivalence_error(const MeasurementRecord& y, const MeasurementRecord& cascade);

struct RefinementStudy {
  std::vector<std::pair<double, double>> h_and_error;
  /// Least-squares order; NaN when every error is exactly zero.
  double order = 0.0;
  bool exact() const { return std::isnan(order); }
};

/// Runs `measure` on n_cells, 2 n_cells, 4 n_cells, ... at the config's cfl.
RefinementStudy refinement_study(const RunConfig& base, int levels,
                                 const std::function<double(const RunConfig&)>& measure);

/// Forward pass of the homogeneous system from (q, 0) with left trace
/// left_trace(t), then a backward pass replaying the trace; returns the max-norm
/// distance of (w1, w2) from the initial state.
double reversibility_error(const SourceField& q, const Grids& grids,
                           const std::function<double(double)>& left_trace);

struct IdentityCheck {
  double max_at_boundaries = 0.0;   ///< over all 2n+1 pass boundaries
  double max_first_cycle = 0.0;     ///< over every step of the first cycle
  /// w2 at x = 0 (rate of the injected trace), over all compared steps
  double max_boundary_rate_gap = 0.0;
};

/// Feeds the observer the reflected cascade output of the periodic truth and
/// compares observer - truth against the directly simulated error system.
IdentityCheck observer_error_identity(const RunConfig& cfg, const SourceField& q, double y0 = 0.0,
                                      double ydot0 = 0.0);

struct LyapunovStudy {
  double max_relative_increase = 0.0;
  double balance_residual = 0.0;
  double energy_residual = 0.0;
  double initial_value = 0.0;
  double final_value = 0.0;
};

/// Lyapunov bookkeeping of the error system started from (-q, 0, -y0, -ydot0, 0)
/// over `cycles` back-and-forth cycles of cfg.
LyapunovStudy lyapunov_study(const RunConfig& cfg, const SourceField& q, double y0, double ydot0,
                             int cycles);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  ///< "<=" or ">="
  bool passed = false;
};

}  // namespace bfn
