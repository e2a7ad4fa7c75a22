#include "bfn/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bfn {

Grid1D::Grid1D(int n_cells) : n_cells_(n_cells), dx_(0.0) {
  if (n_cells < 4) {
    throw std::invalid_argument("n_cells must be >= 4 (boundary stencil needs 3 nodes), got " +
                                std::to_string(n_cells));
  }
  dx_ = 1.0 / static_cast<double>(n_cells);
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(n_nodes());
  for (int j = 0; j <= n_cells_; ++j) x[static_cast<std::size_t>(j)] = node(j);
  return x;
}

Grids make_grids(int n_cells, double horizon, double cfl) {
  Grid1D space(n_cells);
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("observation horizon T must be positive");
  }
  if (!(cfl > 0.0)) {
    throw std::invalid_argument("cfl must be positive");
  }
  if (cfl > 1.0) {
    throw std::invalid_argument("cfl > 1 violates the explicit stability bound");
  }
  const double dt_max = cfl * space.dx();
  // Relative slack so that exact ratios like 3 / 2.5e-4 do not round up to M + 1.
  const double ratio = horizon / dt_max;
  auto steps = static_cast<std::int64_t>(std::ceil(ratio * (1.0 - 4.0 * std::numeric_limits<double>::epsilon())));
  if (steps < 1) steps = 1;
  TimeGrid time;
  time.steps_per_pass = steps;
  time.dt = horizon / static_cast<double>(steps);
  time.cfl = time.dt / space.dx();
  time.horizon = horizon;
  return Grids{space, time};
}

void require_same_grids(const Grids& a, const Grids& b) {
  if (!(a.space == b.space) || a.time.steps_per_pass != b.time.steps_per_pass ||
      a.time.dt != b.time.dt) {
    throw GridMismatchError("grid mismatch: (n_cells=" + std::to_string(a.space.n_cells()) +
                            ", M=" + std::to_string(a.time.steps_per_pass) + ") vs (n_cells=" +
                            std::to_string(b.space.n_cells()) +
                            ", M=" + std::to_string(b.time.steps_per_pass) + ")");
  }
}

SourceField::SourceField(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 5) {
    throw std::invalid_argument("source field needs at least 5 samples");
  }
  double scale = 1.0;
  for (double v : samples_) {
    if (!std::isfinite(v)) throw std::invalid_argument("source field has non-finite samples");
    scale = std::max(scale, std::abs(v));
  }
  if (std::abs(samples_.front()) > 1e-12 * scale || std::abs(samples_.back()) > 1e-12 * scale) {
    throw std::invalid_argument("source field must vanish at x=0 and x=1");
  }
  samples_.front() = 0.0;
  samples_.back() = 0.0;
}

SourceField SourceField::zero(const Grid1D& grid) {
  return SourceField(std::vector<double>(grid.n_nodes(), 0.0));
}

SourceField SourceField::polynomial(const Grid1D& grid) {
  std::vector<double> q(grid.n_nodes());
  for (int j = 0; j <= grid.n_cells(); ++j) {
    const double x = grid.node(j);
    q[static_cast<std::size_t>(j)] = x - x * x;
  }
  return SourceField(std::move(q));
}

SourceField SourceField::mode(const Grid1D& grid, int k) {
  if (k < 1) throw std::invalid_argument("mode index must be >= 1");
  std::vector<double> q(grid.n_nodes());
  for (int j = 0; j <= grid.n_cells(); ++j) {
    q[static_cast<std::size_t>(j)] = std::sin(k * std::numbers::pi * grid.node(j));
  }
  q.front() = 0.0;
  q.back() = 0.0;
  return SourceField(std::move(q));
}

}  // namespace bfn
