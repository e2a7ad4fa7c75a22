#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bfn/grid.hpp"
#include "bfn/oscillator.hpp"
#include "bfn/wave.hpp"

namespace bfn {

/// One point of an error trajectory (consecutive points are one step apart).
struct TrajectoryPoint {
  WaveFieldState wave;
  OscillatorState osc;
};

/// Discrete H1 seminorm squared, sum over cells of dx * ((w[j+1]-w[j])/dx)^2.
double h1_seminorm_sq(std::span<const double> w1, const Grid1D& grid);
/// Velocity energy over the free (non-Dirichlet) nodes, sum dx * w2[j]^2.
double kinetic_sq(std::span<const double> w2, const Grid1D& grid);

/// V = 1/2 (|W1_x|^2 + |W2|^2 + gamma1 omega^2 Z1^2 + gamma1 Z2^2) on the error state.
double lyapunov(const WaveFieldState& err_wave, const OscillatorState& err_osc,
                const Grid1D& grid, ObserverGains gains, double omega);

/// Trapezoidal L2(0,1) norm of a - b on a uniform grid over [0, 1].
double l2_error(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> a);

/// Least-squares slope of log e against log h; needs >= 2 pairs with e > 0.
double convergence_order(std::span<const std::pair<double, double>> h_and_error);

struct DiagnosticsSample {
  double t = 0.0;
  double lyapunov = 0.0;
  double dissipation_integral = 0.0;  ///< gamma1 gamma2 omega^2 int_0^t Z1^2
  double energy_residual = 0.0;       ///< V(t) - V(0) + dissipation_integral
  double boundary_flux_l2 = 0.0;      ///< int_0^t |W1_x(s, 0)|^2 (one-sided stencil)
};

/// Streaming Lyapunov bookkeeping along an error trajectory.
class LyapunovMonitor {
 public:
  LyapunovMonitor(const Grid1D& grid, ObserverGains gains, double omega);

  void observe(const WaveFieldState& wave, const OscillatorState& osc);

  const DiagnosticsSample& current() const { return current_; }
  double initial_value() const { return v0_; }
  /// max_t |V(t) - V(0) + dissipation(t)| / V(0)
  double balance_residual() const;
  /// max over steps of (V_{m+1} - V_m) / V_m; negative when strictly decreasing.
  double max_relative_increase() const { return max_rel_increase_; }
  std::size_t samples() const { return count_; }

 private:
  Grid1D grid_;
  ObserverGains gains_;
  double omega_;
  DiagnosticsSample current_;
  double v0_ = 0.0;
  double last_z1_ = 0.0;
  double last_flux_ = 0.0;
  double max_abs_balance_ = 0.0;
  double max_rel_increase_ = -1.0;
  std::size_t count_ = 0;
};

/// Streaming check of the energy identity
///   |W1_x|^2 + |W2|^2 + g1|Z2|^2 + g1 w^2|Z1|^2 + 2 g1 g2 w^2 int|Z1|^2
///     = |q_x|^2 + g1|ydot0|^2 + g1 w^2|y0|^2
/// for an error trajectory started from (-q, 0, -y0, -ydot0, 0). Its
/// quadratures are coded separately from lyapunov().
class EnergyIdentityMonitor {
 public:
  EnergyIdentityMonitor(const SourceField& q, double y0, double ydot0, const Grid1D& grid,
                        ObserverGains gains, double omega);

  void observe(const WaveFieldState& wave, const OscillatorState& osc);

  double right_side() const { return rhs_; }
  /// max_t |lhs(t) - rhs| / rhs (0 when both sides vanish)
  double residual() const;
  double last_left_side() const { return last_lhs_; }

 private:
  double dx_;
  ObserverGains gains_;
  double omega_;
  double rhs_ = 0.0;
  double integral_z1_sq_ = 0.0;
  double last_z1_ = 0.0;
  double last_t_ = 0.0;
  double last_lhs_ = 0.0;
  double max_abs_ = 0.0;
  bool started_ = false;
};

double dissipation_balance(std::span<const TrajectoryPoint> trajectory, const Grid1D& grid,
                           ObserverGains gains, double omega);

double energy_identity_residual(std::span<const TrajectoryPoint> trajectory, const SourceField& q,
                                double y0, double ydot0, const Grid1D& grid, ObserverGains gains,
                                double omega);

}  // namespace bfn
