#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfn {

/// Raised when two fields, records or states live on incompatible grids.
class GridMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform grid on [0, 1] with nodes x_j = j / n_cells.
class Grid1D {
 public:
  explicit Grid1D(int n_cells);

  int n_cells() const { return n_cells_; }
  std::size_t n_nodes() const { return static_cast<std::size_t>(n_cells_) + 1; }
  double dx() const { return dx_; }
  double node(int j) const { return static_cast<double>(j) / static_cast<double>(n_cells_); }
  std::vector<double> nodes() const;

  bool operator==(const Grid1D& other) const { return n_cells_ == other.n_cells_; }

 private:
  int n_cells_;
  double dx_;
};

/// Time discretization of one observation pass [0, T] into M equal steps.
struct TimeGrid {
  double dt = 0.0;
  std::int64_t steps_per_pass = 0;
  double cfl = 0.0;
  double horizon = 0.0;

  bool operator==(const TimeGrid&) const = default;
};

struct Grids {
  Grid1D space;
  TimeGrid time;
};

/// Builds the space/time grids. dt starts at cfl * dx and is shrunk minimally
/// so that M = T / dt is an integer; pass boundaries then land on t = kT.
Grids make_grids(int n_cells, double horizon, double cfl);

/// Throws GridMismatchError unless both grids describe the same discretization.
void require_same_grids(const Grids& a, const Grids& b);

enum class StepDirection { Forward, Backward };

inline double sign_of(StepDirection dir) { return dir == StepDirection::Forward ? 1.0 : -1.0; }

/// Direction of the pass containing global steps [pass * M, (pass + 1) * M).
inline StepDirection direction_of_pass(std::int64_t pass) {
  return pass % 2 == 0 ? StepDirection::Forward : StepDirection::Backward;
}

/// Samples of the source profile q on the grid nodes; q(0) = q(1) = 0.
class SourceField {
 public:
  SourceField() = default;
  /// Throws std::invalid_argument when the endpoint values are not (numerically) zero.
  explicit SourceField(std::vector<double> samples);

  static SourceField zero(const Grid1D& grid);
  /// q(x) = x - x^2
  static SourceField polynomial(const Grid1D& grid);
  /// q(x) = sin(k pi x)
  static SourceField mode(const Grid1D& grid, int k);

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t j) const { return samples_[j]; }

 private:
  std::vector<double> samples_;
};

}  // namespace bfn
