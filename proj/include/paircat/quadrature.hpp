#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "paircat/fockspace.hpp"

namespace paircat {

/// Rectangular sampling grid for P(x, y). Nodes include both end points.
struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  double y_min = -10.0;
  double y_max = 10.0;
  int nx = 321;
  int ny = 321;

  void validate() const;
  // Mirror-exact node placement: on a centered grid x(n-1-i) == -x(i).
  double x(int i) const { return ((nx - 1 - i) * x_min + i * x_max) / (nx - 1); }
  double y(int j) const { return ((ny - 1 - j) * y_min + j * y_max) / (ny - 1); }
  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dy() const { return (y_max - y_min) / (ny - 1); }
};

/// Quadrature distribution sampled on a grid; values stored x-major.
struct Raster {
  GridSpec grid;
  std::vector<double> values;
  double norm_estimate = 0.0;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.ny + j]; }
};

/// Largest |psi| allowed on the raster boundary before the grid counts as clipping.
inline constexpr double kBoundaryAmplitudeLimit = 1e-8;

namespace quadrature {

/// psi(x, y) = sum_n coeffs[n] phi_{n+q}(x) phi_n(y).
complex cat_wavefunction(const LadderState& state, double x, double y);

/// |psi|^2 on every node plus its trapezoid integral. Throws GridTooSmallError
/// when the wavefunction on the boundary exceeds kBoundaryAmplitudeLimit.
Raster quadrature_distribution(const LadderState& state, const GridSpec& grid, int threads = 1);

struct Asymmetry {
  double swap = 0.0;      // P(x,y) vs P(y,x)
  double point = 0.0;     // P(x,y) vs P(-x,-y)
  double x_parity = 0.0;  // P(x,y) vs P(-x,y)
  double y_parity = 0.0;  // P(x,y) vs P(x,-y)
};

/// Max absolute differences under the four reflections. Requires a grid that
/// is square and centered on the origin.
Asymmetry measure_asymmetry(const Raster& raster);

/// Plain-text matrix: 4 comment lines, then one row per y node (columns run over x).
void write_matrix(std::ostream& out, const Raster& raster, const std::string& state_label);

/// Long-form CSV with header "x,y,p".
void write_csv(std::ostream& out, const Raster& raster);

}  // namespace quadrature
}  // namespace paircat
