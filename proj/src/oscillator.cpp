#include "bfn/oscillator.hpp"

#include <cmath>
#include <stdexcept>

namespace bfn {

ObserverGains ObserverGains::checked(double gamma1, double gamma2) {
  if (!std::isfinite(gamma1) || !std::isfinite(gamma2) || gamma1 < 0.0 || gamma2 < 0.0) {
    throw std::invalid_argument("observer gains must be finite and non-negative");
  }
  return ObserverGains{gamma1, gamma2};
}

OscillatorState cascade_osc_step(const OscillatorState& z, double drive_now, double drive_next,
                                 double omega, StepDirection dir, double dt) {
  const double k = 0.5 * dt;
  const double d = sign_of(dir);
  const double w2 = omega * omega;
  const double r1 = z.z1 + k * d * z.z2;
  const double r2 = z.z2 + k * d * (-w2 * z.z1 + drive_now + drive_next);
  const double det = 1.0 + k * k * w2;

  OscillatorState out;
  out.z1 = (r1 + k * d * r2) / det;
  out.z2 = r2 - k * d * w2 * out.z1;
  out.z3 = z.z3 + k * (z.z1 + out.z1);
  out.t = z.t + dt;
  return out;
}

double injection_value(const OscillatorState& zhat, double y, double integral_of_y,
                       ObserverGains gains) {
  return gains.gamma1 * (zhat.z1 - y) + gains.gamma1 * gains.gamma2 * (zhat.z3 - integral_of_y);
}

ObserverStepResult observer_osc_step(const OscillatorState& zhat, double drive_now,
                                     FluxSplit drive_next, const MeasurementWindow& y,
                                     ObserverGains gains, double omega, StepDirection dir,
                                     double dt) {
  const double k = 0.5 * dt;
  const double d = sign_of(dir);
  const double w2 = omega * omega;
  const double g1 = gains.gamma1;
  const double g2 = gains.gamma2;
  const double c0 = drive_next.left_coefficient;

  // z3' = z3 + k (z1 + z1'); injected value is affine in z1'.
  const double s3 = zhat.z3 + k * zhat.z1;
  const double inj_slope = g1 * (1.0 + g2 * k);
  const double inj_offset = g1 * g2 * (s3 - y.integral_next) - g1 * y.y_next;

  const double r1 = zhat.z1 + k * (d * zhat.z2 - g2 * (zhat.z1 - y.y_now) + g2 * y.y_next);
  const double r2 = zhat.z2 + k * d * (-w2 * zhat.z1 + drive_now) +
                    k * d * (drive_next.interior + c0 * inj_offset);
  const double a11 = 1.0 + k * g2;
  const double a12 = -k * d;
  const double a21 = k * d * (w2 - c0 * inj_slope);
  const double det = a11 - a12 * a21;

  ObserverStepResult out;
  out.state.z1 = (r1 - a12 * r2) / det;
  out.state.z2 = r2 - a21 * out.state.z1;
  out.state.z3 = s3 + k * out.state.z1;
  out.state.t = zhat.t + dt;
  out.injected = inj_slope * out.state.z1 + inj_offset;
  return out;
}

}  // namespace bfn
