#pragma once

#include <span>
#include <vector>

#include "bfn/grid.hpp"

namespace bfn {

/// Displacement/velocity pair on the grid nodes at physical time t.
///
/// w2 follows the first-order convention of the periodic systems: on forward
/// passes w1_t = w2, on backward passes w1_t = -w2. Physical time t always
/// increases; a backward step is a step of the same system with signed step
/// tau = -dt.
struct WaveFieldState {
  std::vector<double> w1;
  std::vector<double> w2;
  double t = 0.0;

  static WaveFieldState zero(const Grid1D& grid);
  static WaveFieldState displaced(const SourceField& profile);
};

/// Interior nodes advanced one step; the left boundary value of the new level
/// is still pending. Produced by advance_interior, consumed by close_step.
struct PendingStep {
  WaveFieldState next;  ///< w1 interior at the new level, w2 interior at the half step
  double tau = 0.0;
  double previous_left = 0.0;
  double previous_left_rate = 0.0;
};

/// Optional distributed forcing amplitude * q_j added to w1_xx at interior nodes.
struct Forcing {
  std::span<const double> profile;
  double amplitude = 0.0;
};

/// Kick-drift half of a leapfrog (velocity Verlet) step with signed step tau.
PendingStep advance_interior(const WaveFieldState& state, const Grid1D& grid, double tau,
                             double t_next, Forcing now = {});

/// Sets w1[0] = left_value, w1[n] = 0 and completes the velocity kick.
WaveFieldState close_step(PendingStep&& pending, const Grid1D& grid, double left_value,
                          Forcing next = {});

/// One step of u_tt - u_xx = q cos(omega t) with homogeneous Dirichlet ends.
WaveFieldState forced_wave_step(const WaveFieldState& state, const SourceField& q, double omega,
                                const Grids& grids);

/// One step of the homogeneous system in direction dir; w1[0] is set to
/// left_boundary_value after the interior update.
WaveFieldState homogeneous_wave_step(const WaveFieldState& state, double left_boundary_value,
                                     StepDirection dir, const Grids& grids);

/// Second-order one-sided approximation of w1_x(t, 0).
double boundary_flux(const WaveFieldState& state, const Grid1D& grid);

/// First cell difference (w1[1] - w1[0]) / dx. This is the flux for which the
/// semi-discrete energy sum(dx * w2^2) + sum((w1[j+1]-w1[j])^2 / dx) balances
/// exactly against the boundary work, so it drives the coupled oscillators.
double cell_flux(const WaveFieldState& state, const Grid1D& grid);

/// Splits cell_flux of the pending level into the part known after the
/// interior update and the coefficient multiplying the injected left value.
struct FluxSplit {
  double interior = 0.0;
  double left_coefficient = 0.0;

  double with_left(double left_value) const { return interior + left_coefficient * left_value; }
};
FluxSplit pending_cell_flux(const PendingStep& pending, const Grid1D& grid);

/// Discrete energy sum_cells (dw1)^2/dx + sum_free dx*w2^2 (no 1/2 factor).
double wave_energy(const WaveFieldState& state, const Grid1D& grid);

}  // namespace bfn
