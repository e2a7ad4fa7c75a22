#include "bfn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bfn {

double h1_seminorm_sq(std::span<const double> w1, const Grid1D& grid) {
  if (w1.size() != grid.n_nodes()) throw GridMismatchError("field/grid size mismatch");
  const double dx = grid.dx();
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < w1.size(); ++j) {
    const double slope = (w1[j + 1] - w1[j]) / dx;
    s += dx * slope * slope;
  }
  return s;
}

double kinetic_sq(std::span<const double> w2, const Grid1D& grid) {
  if (w2.size() != grid.n_nodes()) throw GridMismatchError("field/grid size mismatch");
  double s = 0.0;
  for (std::size_t j = 1; j + 1 < w2.size(); ++j) s += w2[j] * w2[j];
  return grid.dx() * s;
}

double lyapunov(const WaveFieldState& err_wave, const OscillatorState& err_osc,
                const Grid1D& grid, ObserverGains gains, double omega) {
  const double field = h1_seminorm_sq(err_wave.w1, grid) + kinetic_sq(err_wave.w2, grid);
  const double osc = gains.gamma1 * omega * omega * err_osc.z1 * err_osc.z1 +
                     gains.gamma1 * err_osc.z2 * err_osc.z2;
  return 0.5 * (field + osc);
}

double l2_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw GridMismatchError("l2_error: fields have " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()) + " samples");
  }
  if (a.size() < 2) throw std::invalid_argument("l2_error needs at least two samples");
  const double dx = 1.0 / static_cast<double>(a.size() - 1);
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    const double w = (j == 0 || j + 1 == a.size()) ? 0.5 : 1.0;
    s += w * d * d;
  }
  return std::sqrt(dx * s);
}

double l2_norm(std::span<const double> a) {
  const std::vector<double> zero(a.size(), 0.0);
  return l2_error(a, zero);
}

double convergence_order(std::span<const std::pair<double, double>> h_and_error) {
  if (h_and_error.size() < 2) throw std::invalid_argument("convergence_order needs >= 2 pairs");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [h, e] : h_and_error) {
    if (!(h > 0.0) || !(e > 0.0)) {
      throw std::invalid_argument("convergence_order needs positive spacings and errors");
    }
    const double x = std::log(h);
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(h_and_error.size());
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw std::invalid_argument("convergence_order needs distinct spacings");
  return (n * sxy - sx * sy) / denom;
}

LyapunovMonitor::LyapunovMonitor(const Grid1D& grid, ObserverGains gains, double omega)
    : grid_(grid), gains_(gains), omega_(omega) {}

void LyapunovMonitor::observe(const WaveFieldState& wave, const OscillatorState& osc) {
  const double v = lyapunov(wave, osc, grid_, gains_, omega_);
  const double flux = boundary_flux(wave, grid_);
  if (count_ == 0) {
    v0_ = v;
    current_ = DiagnosticsSample{osc.t, v, 0.0, 0.0, 0.0};
  } else {
    const double dt = osc.t - current_.t;
    const double rate = gains_.gamma1 * gains_.gamma2 * omega_ * omega_;
    const double prev_v = current_.lyapunov;
    current_.dissipation_integral += rate * 0.5 * dt * (last_z1_ * last_z1_ + osc.z1 * osc.z1);
    current_.boundary_flux_l2 += 0.5 * dt * (last_flux_ * last_flux_ + flux * flux);
    current_.t = osc.t;
    current_.lyapunov = v;
    current_.energy_residual = v - v0_ + current_.dissipation_integral;
    max_abs_balance_ = std::max(max_abs_balance_, std::abs(current_.energy_residual));
    if (prev_v > 0.0) max_rel_increase_ = std::max(max_rel_increase_, (v - prev_v) / prev_v);
  }
  last_z1_ = osc.z1;
  last_flux_ = flux;
  ++count_;
}

double LyapunovMonitor::balance_residual() const {
  if (max_abs_balance_ == 0.0) return 0.0;
  if (v0_ == 0.0) return std::numeric_limits<double>::infinity();
  return max_abs_balance_ / v0_;
}

EnergyIdentityMonitor::EnergyIdentityMonitor(const SourceField& q, double y0, double ydot0,
                                             const Grid1D& grid, ObserverGains gains,
                                             double omega)
    : dx_(grid.dx()), gains_(gains), omega_(omega) {
  if (q.size() != grid.n_nodes()) throw GridMismatchError("source/grid size mismatch");
  double qx = 0.0;
  const auto& s = q.samples();
  for (std::size_t j = 1; j < s.size(); ++j) qx += (s[j] - s[j - 1]) * (s[j] - s[j - 1]);
  qx /= dx_;
  rhs_ = qx + gains.gamma1 * ydot0 * ydot0 + gains.gamma1 * omega * omega * y0 * y0;
}

void EnergyIdentityMonitor::observe(const WaveFieldState& wave, const OscillatorState& osc) {
  if (started_) {
    integral_z1_sq_ += 0.5 * (osc.t - last_t_) * (last_z1_ * last_z1_ + osc.z1 * osc.z1);
  }
  double grad = 0.0;
  for (std::size_t j = 1; j < wave.w1.size(); ++j) {
    const double d = wave.w1[j] - wave.w1[j - 1];
    grad += d * d;
  }
  grad /= dx_;
  double vel = 0.0;
  for (std::size_t j = 1; j + 1 < wave.w2.size(); ++j) vel += wave.w2[j] * wave.w2[j];
  vel *= dx_;
  const double g1 = gains_.gamma1;
  const double w2 = omega_ * omega_;
  last_lhs_ = grad + vel + g1 * osc.z2 * osc.z2 + g1 * w2 * osc.z1 * osc.z1 +
              2.0 * g1 * gains_.gamma2 * w2 * integral_z1_sq_;
  max_abs_ = std::max(max_abs_, std::abs(last_lhs_ - rhs_));
  last_z1_ = osc.z1;
  last_t_ = osc.t;
  started_ = true;
}

double EnergyIdentityMonitor::residual() const {
  if (max_abs_ == 0.0) return 0.0;
  if (rhs_ == 0.0) return std::numeric_limits<double>::infinity();
  return max_abs_ / rhs_;
}

double dissipation_balance(std::span<const TrajectoryPoint> trajectory, const Grid1D& grid,
                           ObserverGains gains, double omega) {
  LyapunovMonitor monitor(grid, gains, omega);
  for (const auto& p : trajectory) monitor.observe(p.wave, p.osc);
  return monitor.balance_residual();
}

double energy_identity_residual(std::span<const TrajectoryPoint> trajectory, const SourceField& q,
                                double y0, double ydot0, const Grid1D& grid, ObserverGains gains,
                                double omega) {
  EnergyIdentityMonitor monitor(q, y0, ydot0, grid, gains, omega);
  for (const auto& p : trajectory) monitor.observe(p.wave, p.osc);
  return monitor.residual();
}

}  // namespace bfn
