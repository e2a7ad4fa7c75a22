#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bfn/diagnostics.hpp"
#include "bfn/estimator.hpp"
#include "bfn/validation.hpp"

using namespace bfn;

TEST_CASE("lyapunov values") {
  const Grid1D grid(20);
  const ObserverGains gains{1.0, 0.5};
  CHECK(lyapunov(WaveFieldState::zero(grid), OscillatorState{}, grid, gains, 1.0) == 0.0);
  CHECK(lyapunov(WaveFieldState::zero(grid), OscillatorState{1.0, 2.0, 0.0, 0.0}, grid, gains, 1.0) == 2.5);

  auto sine = [&](int n) {
    const Grid1D gr(n);
    return lyapunov(WaveFieldState::displaced(SourceField::mode(gr, 1)), OscillatorState{}, gr, gains, 1.0);
  };
  const double exact = std::numbers::pi * std::numbers::pi / 4.0;
  CHECK(std::abs(sine(20) - exact) <= 2.5 * 0.05 * 0.05);
  CHECK(std::log2(std::abs(sine(20) - exact) / std::abs(sine(40) - exact)) >= 1.8);
}

TEST_CASE("l2 error") {
  const Grid1D grid(20);
  const auto poly = SourceField::polynomial(grid);
  const auto zero = SourceField::zero(grid);
  CHECK(l2_error(poly.samples(), poly.samples()) == 0.0);
  CHECK(std::abs(l2_error(poly.samples(), zero.samples()) - 1.0 / std::sqrt(30.0)) <= 0.05 * 0.05);
  const auto mode = SourceField::mode(grid, 1);
  CHECK(std::abs(l2_norm(mode.samples()) - std::sqrt(0.5)) <= 0.05 * 0.05);
  const std::vector<double> shorter(10, 0.0);
  CHECK_THROWS_AS(l2_error(poly.samples(), shorter), GridMismatchError);
}

TEST_CASE("convergence order") {
  const std::vector<std::pair<double, double>> quad{{0.1, 0.01}, {0.05, 0.0025}};
  const std::vector<std::pair<double, double>> lin{{0.1, 0.1}, {0.05, 0.05}};
  CHECK(convergence_order(quad) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(convergence_order(lin) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero trajectory has zero residuals") {
  RunConfig cfg;
  cfg.n_iterations = 1;
  const auto q = SourceField::zero(cfg.grids().space);
  const auto traj = error_dynamics_run(q, 0.0, 0.0, cfg);
  CHECK(dissipation_balance(traj, cfg.grids().space, cfg.gains, cfg.omega) == 0.0);
  CHECK(energy_identity_residual(traj, q, 0.0, 0.0, cfg.grids().space, cfg.gains, cfg.omega) == 0.0);
  const auto study = lyapunov_study(cfg, q, 0.0, 0.0, 1);
  CHECK(study.balance_residual == 0.0);
  CHECK(study.energy_residual == 0.0);
  CHECK(study.final_value == 0.0);
}

TEST_CASE("energy identity right side for a modal source") {
  const Grid1D grid(40);
  const auto q = SourceField::mode(grid, 1);
  EnergyIdentityMonitor m(q, 0.0, 0.0, grid, ObserverGains{}, 1.0);
  const double exact = std::numbers::pi * std::numbers::pi / 2.0;
  CHECK(std::abs(m.right_side() - exact) <= 2.0 * 0.025 * 0.025 * exact);
  EnergyIdentityMonitor y(SourceField::zero(grid), 1.5, -2.0, grid, ObserverGains{2.0, 0.5}, 3.0);
  CHECK(y.right_side() == doctest::Approx(2.0 * 4.0 + 2.0 * 9.0 * 2.25));
}

TEST_CASE("one cycle of the default error system") {
  RunConfig cfg;
  const auto q = cfg.source.build(cfg.grids().space);
  const auto study = lyapunov_study(cfg, q, 0.0, 0.0, 1);
  CHECK(study.initial_value == doctest::Approx(0.16625).epsilon(1e-14));
  CHECK(study.balance_residual <= 1e-4);
  CHECK(study.energy_residual <= 1e-4);
  CHECK(study.max_relative_increase <= 1e-8);
  CHECK(study.final_value < study.initial_value);
}

TEST_CASE("lyapunov decreases over the first forward pass, pinned") {
  RunConfig cfg;
  cfg.n_iterations = 1;
  const Grids g = cfg.grids();
  const auto q = cfg.source.build(g.space);
  LyapunovMonitor mon(g.space, cfg.gains, cfg.omega);
  double at_T = 0.0;
  error_dynamics_run(q, 0.0, 0.0, cfg, [&](std::int64_t s, const WaveFieldState& w, const OscillatorState& z) {
    mon.observe(w, z);
    if (s == g.time.steps_per_pass) at_T = mon.current().lyapunov;
  });
  CHECK(at_T <= mon.initial_value());
  CHECK(at_T == doctest::Approx(0.16079661722307342).epsilon(1e-10));
}

TEST_CASE("balance and energy residuals vanish together under refinement") {
  RunConfig cfg;
  const auto balance = refinement_study(cfg, 2, [](const RunConfig& c) {
    return lyapunov_study(c, c.source.build(c.grids().space), 0.0, 0.0, 1).balance_residual;
  });
  const auto energy = refinement_study(cfg, 2, [](const RunConfig& c) {
    return lyapunov_study(c, c.source.build(c.grids().space), 0.0, 0.0, 1).energy_residual;
  });
  CHECK(balance.order >= 1.8);
  CHECK(energy.order >= 1.8);
  CHECK(balance.h_and_error[1].second == doctest::Approx(energy.h_and_error[1].second).epsilon(1e-3));
}
