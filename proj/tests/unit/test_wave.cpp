#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bfn/diagnostics.hpp"
#include "bfn/wave.hpp"

using namespace bfn;

namespace {

constexpr double pi = std::numbers::pi;

double modal_interior_error(int n_cells) {
  const auto g = make_grids(n_cells, 1.0, 0.005);
  const auto q = SourceField::mode(g.space, 1);
  auto s = WaveFieldState::zero(g.space);
  for (std::int64_t m = 0; m < g.time.steps_per_pass; ++m) s = forced_wave_step(s, q, 1.0, g);
  double worst = 0.0;
  for (int j = 0; j <= n_cells; ++j) {
    const double x = g.space.node(j);
    const double exact = (std::cos(1.0) - std::cos(pi)) / (pi * pi - 1.0) * std::sin(pi * x);
    worst = std::max(worst, std::abs(s.w1[static_cast<std::size_t>(j)] - exact));
  }
  return worst;
}

double standing_wave_error(int n_cells) {
  const auto g = make_grids(n_cells, 1.0, 0.005);
  auto s = WaveFieldState::displaced(SourceField::mode(g.space, 1));
  for (std::int64_t m = 0; m < g.time.steps_per_pass; ++m) {
    s = homogeneous_wave_step(s, 0.0, StepDirection::Forward, g);
  }
  double worst = 0.0;
  for (int j = 0; j <= n_cells; ++j) {
    const double exact = std::cos(pi) * std::sin(pi * g.space.node(j));
    worst = std::max(worst, std::abs(s.w1[static_cast<std::size_t>(j)] - exact));
  }
  return worst;
}

}  // namespace

TEST_CASE("zero stays zero") {
  const auto g = make_grids(20, 1.0, 0.05);
  auto s = WaveFieldState::zero(g.space);
  const auto q = SourceField::zero(g.space);
  for (int m = 0; m < 50; ++m) s = forced_wave_step(s, q, 3.0, g);
  for (double v : s.w1) CHECK(v == 0.0);
  for (double v : s.w2) CHECK(v == 0.0);
  for (int m = 0; m < 50; ++m) s = homogeneous_wave_step(s, 0.0, StepDirection::Backward, g);
  for (double v : s.w1) CHECK(v == 0.0);
}

TEST_CASE("forced modal solution, second order") {
  std::vector<std::pair<double, double>> he;
  for (int n : {20, 40, 80}) he.emplace_back(1.0 / n, modal_interior_error(n));
  CHECK(he[0].second < 5e-3);
  CHECK(convergence_order(he) >= 1.8);
}

TEST_CASE("standing wave, second order") {
  std::vector<std::pair<double, double>> he;
  for (int n : {20, 40, 80}) he.emplace_back(1.0 / n, standing_wave_error(n));
  CHECK(he[0].second < 5e-3);
  CHECK(convergence_order(he) >= 1.8);
}

TEST_CASE("forward then backward replaying the trace restores the state") {
  const auto g = make_grids(20, 1.0, 0.01);
  auto s = WaveFieldState::displaced(SourceField::polynomial(g.space));
  for (std::size_t j = 1; j < 20; ++j) s.w2[j] = 0.3 * std::sin(2.0 * j);
  const auto start = s;
  const double dt = g.time.dt;
  const auto M = g.time.steps_per_pass;
  auto trace = [](double t) { return 0.2 * std::sin(5.0 * t); };
  for (std::int64_t m = 0; m < M; ++m) s = homogeneous_wave_step(s, trace((m + 1) * dt), StepDirection::Forward, g);
  for (std::int64_t m = 0; m < M; ++m) s = homogeneous_wave_step(s, trace((M - m - 1) * dt), StepDirection::Backward, g);
  double worst = 0.0;
  for (std::size_t j = 0; j <= 20; ++j) {
    worst = std::max(worst, std::abs(s.w1[j] - start.w1[j]));
    worst = std::max(worst, std::abs(s.w2[j] - start.w2[j]));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("boundary flux stencil") {
  const Grid1D grid(20);
  WaveFieldState s = WaveFieldState::zero(grid);
  CHECK(boundary_flux(s, grid) == 0.0);
  for (int j = 0; j <= 20; ++j) s.w1[static_cast<std::size_t>(j)] = 1.0 - grid.node(j);
  CHECK(boundary_flux(s, grid) == doctest::Approx(-1.0).epsilon(1e-13));

  auto sine_error = [](int n) {
    const Grid1D gr(n);
    auto st = WaveFieldState::displaced(SourceField::mode(gr, 1));
    return std::abs(boundary_flux(st, gr) - pi);
  };
  const std::vector<std::pair<double, double>> he{{0.05, sine_error(20)}, {0.025, sine_error(40)}};
  CHECK(sine_error(20) < 0.05);
  CHECK(convergence_order(he) >= 1.9);

  WaveFieldState tiny{{0.0, 1.0}, {0.0, 0.0}, 0.0};
  CHECK_THROWS_AS(boundary_flux(tiny, grid), std::invalid_argument);
}

TEST_CASE("forced step rejects a source on another grid") {
  const auto g = make_grids(20, 1.0, 0.05);
  const auto q = SourceField::polynomial(Grid1D(10));
  CHECK_THROWS_AS(forced_wave_step(WaveFieldState::zero(g.space), q, 1.0, g), GridMismatchError);
}
