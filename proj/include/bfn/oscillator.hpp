#pragma once

#include "bfn/grid.hpp"
#include "bfn/wave.hpp"

namespace bfn {

/// Oscillator position z1, velocity z2 and integrator z3 = int_0^t z1.
struct OscillatorState {
  double z1 = 0.0;
  double z2 = 0.0;
  double z3 = 0.0;
  double t = 0.0;
};

struct ObserverGains {
  double gamma1 = 1.0;
  double gamma2 = 0.5;

  /// Rejects negative or non-finite gains. Zero is accepted for the degenerate
  /// checks; convergence of the estimator needs both gains strictly positive.
  static ObserverGains checked(double gamma1, double gamma2);
  bool strictly_positive() const { return gamma1 > 0.0 && gamma2 > 0.0; }
};

/// One trapezoidal step of z1' = d z2, z2' = d(-omega^2 z1 + drive), z3' = z1
/// with d = +1 forward, -1 backward. drive_now / drive_next are the wave
/// boundary flux at the two ends of the step.
OscillatorState cascade_osc_step(const OscillatorState& z, double drive_now, double drive_next,
                                 double omega, StepDirection dir, double dt);

/// Measurement values seen by the observer over one step.
struct MeasurementWindow {
  double y_now = 0.0;
  double y_next = 0.0;
  double integral_next = 0.0;  ///< int_0^{t+dt} Y, already accumulated
};

struct ObserverStepResult {
  OscillatorState state;
  double injected = 0.0;  ///< left Dirichlet value gamma1(z1-Y) + gamma1 gamma2(z3 - int Y)
};

/// One trapezoidal step of the nudged observer oscillator
///   z1' = d z2 - gamma2 (z1 - Y),  z2' = d(-omega^2 z1 + drive),  z3' = z1.
/// The drive at the new level depends on the injected boundary value, which in
/// turn depends on the new oscillator state; the coupled linear system is
/// solved exactly.
ObserverStepResult observer_osc_step(const OscillatorState& zhat, double drive_now,
                                     FluxSplit drive_next, const MeasurementWindow& y,
                                     ObserverGains gains, double omega, StepDirection dir,
                                     double dt);

double injection_value(const OscillatorState& zhat, double y, double integral_of_y,
                       ObserverGains gains);

/// True cascade oscillator at t = 0: (y(0), y'(0), 0).
inline OscillatorState init_truth_oscillator(double y0, double ydot0) {
  return OscillatorState{y0, ydot0, 0.0, 0.0};
}

/// omega^2 z1^2 + z2^2
inline double oscillator_energy(const OscillatorState& z, double omega) {
  return omega * omega * z.z1 * z.z1 + z.z2 * z.z2;
}

}  // namespace bfn
