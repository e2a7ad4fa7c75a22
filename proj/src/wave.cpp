#include "bfn/wave.hpp"

#include <cmath>
#include <stdexcept>

namespace bfn {
namespace {

void check_layout(const WaveFieldState& state, const Grid1D& grid) {
  if (state.w1.size() != grid.n_nodes() || state.w2.size() != grid.n_nodes()) {
    throw GridMismatchError("wave state has " + std::to_string(state.w1.size()) +
                            " samples, grid has " + std::to_string(grid.n_nodes()) + " nodes");
  }
}

// w1_xx at interior nodes plus optional forcing; boundary entries left at zero.
void acceleration(std::span<const double> w1, double inv_dx2, Forcing forcing,
                  std::vector<double>& out) {
  const std::size_t n = w1.size() - 1;
  out.assign(w1.size(), 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    out[j] = (w1[j + 1] - 2.0 * w1[j] + w1[j - 1]) * inv_dx2;
  }
  if (!forcing.profile.empty() && forcing.amplitude != 0.0) {
    for (std::size_t j = 1; j < n; ++j) out[j] += forcing.amplitude * forcing.profile[j];
  }
}

}  // namespace

WaveFieldState WaveFieldState::zero(const Grid1D& grid) {
  return WaveFieldState{std::vector<double>(grid.n_nodes(), 0.0),
                        std::vector<double>(grid.n_nodes(), 0.0), 0.0};
}

WaveFieldState WaveFieldState::displaced(const SourceField& profile) {
  return WaveFieldState{profile.samples(), std::vector<double>(profile.size(), 0.0), 0.0};
}

PendingStep advance_interior(const WaveFieldState& state, const Grid1D& grid, double tau,
                             double t_next, Forcing now) {
  check_layout(state, grid);
  const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
  std::vector<double> acc;
  acceleration(state.w1, inv_dx2, now, acc);

  PendingStep pending;
  pending.tau = tau;
  pending.previous_left = state.w1.front();
  pending.previous_left_rate = state.w2.front();
  pending.next.t = t_next;
  pending.next.w1.assign(state.w1.size(), 0.0);
  pending.next.w2.assign(state.w2.size(), 0.0);
  const std::size_t n = state.w1.size() - 1;
  for (std::size_t j = 1; j < n; ++j) {
    const double half = state.w2[j] + 0.5 * tau * acc[j];
    pending.next.w2[j] = half;
    pending.next.w1[j] = state.w1[j] + tau * half;
  }
  return pending;
}

WaveFieldState close_step(PendingStep&& pending, const Grid1D& grid, double left_value,
                          Forcing next) {
  WaveFieldState out = std::move(pending.next);
  const std::size_t n = out.w1.size() - 1;
  out.w1[0] = left_value;
  out.w1[n] = 0.0;
  std::vector<double> acc;
  acceleration(out.w1, 1.0 / (grid.dx() * grid.dx()), next, acc);
  for (std::size_t j = 1; j < n; ++j) out.w2[j] += 0.5 * pending.tau * acc[j];
  // Trapezoidal rate of the injected trace: g' - g = tau * (r + r') / 2.
  out.w2[0] = 2.0 * (left_value - pending.previous_left) / pending.tau - pending.previous_left_rate;
  out.w2[n] = 0.0;
  return out;
}

WaveFieldState forced_wave_step(const WaveFieldState& state, const SourceField& q, double omega,
                                const Grids& grids) {
  if (q.size() != grids.space.n_nodes()) {
    throw GridMismatchError("source field does not match the spatial grid");
  }
  const double dt = grids.time.dt;
  const double t_next = state.t + dt;
  auto pending = advance_interior(state, grids.space, dt, t_next,
                                  Forcing{q.samples(), std::cos(omega * state.t)});
  return close_step(std::move(pending), grids.space, 0.0,
                    Forcing{q.samples(), std::cos(omega * t_next)});
}

WaveFieldState homogeneous_wave_step(const WaveFieldState& state, double left_boundary_value,
                                     StepDirection dir, const Grids& grids) {
  const double dt = grids.time.dt;
  auto pending = advance_interior(state, grids.space, sign_of(dir) * dt, state.t + dt);
  return close_step(std::move(pending), grids.space, left_boundary_value);
}

double boundary_flux(const WaveFieldState& state, const Grid1D& grid) {
  if (state.w1.size() < 3) throw std::invalid_argument("boundary_flux needs >= 3 samples");
  return (-3.0 * state.w1[0] + 4.0 * state.w1[1] - state.w1[2]) / (2.0 * grid.dx());
}

double cell_flux(const WaveFieldState& state, const Grid1D& grid) {
  return (state.w1[1] - state.w1[0]) / grid.dx();
}

FluxSplit pending_cell_flux(const PendingStep& pending, const Grid1D& grid) {
  return FluxSplit{pending.next.w1[1] / grid.dx(), -1.0 / grid.dx()};
}

double wave_energy(const WaveFieldState& state, const Grid1D& grid) {
  check_layout(state, grid);
  const double dx = grid.dx();
  const std::size_t n = state.w1.size() - 1;
  double potential = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = (state.w1[j + 1] - state.w1[j]) / dx;
    potential += dx * d * d;
  }
  double kinetic = 0.0;
  for (std::size_t j = 1; j < n; ++j) kinetic += dx * state.w2[j] * state.w2[j];
  return potential + kinetic;
}

}  // namespace bfn
