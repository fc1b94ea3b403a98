#include "paircat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "paircat/errors.hpp"
#include "paircat/parallel.hpp"
#include "paircat/specfun.hpp"

namespace paircat {

void GridSpec::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw ValidationError("grid: bounds must satisfy min < max on both axes");
  }
  if (nx < 2 || ny < 2) throw ValidationError("grid: at least 2 nodes per axis required");
}

namespace quadrature {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

}  // namespace

complex cat_wavefunction(const LadderState& state, double x, double y) {
  const int n_max = state.n_max();
  if (n_max < 0) return 0.0;
  const auto col_x = specfun::oscillator_column(x, n_max + state.q);
  const auto col_y = specfun::oscillator_column(y, n_max);
  complex psi = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    psi += state.coeffs[n] * (col_x.values[n + state.q] * col_y.values[n]);
  }
  return psi;
}

Raster quadrature_distribution(const LadderState& state, const GridSpec& grid, int threads) {
  grid.validate();
  const int n_max = state.n_max();
  if (n_max < 0) throw ValidationError("quadrature: empty state");
  const std::size_t terms = static_cast<std::size_t>(n_max) + 1;

  // Oscillator columns along y are shared by every x row.
  std::vector<double> y_table(static_cast<std::size_t>(grid.ny) * terms);
  parallel_for(static_cast<std::size_t>(grid.ny), threads, [&](std::size_t j) {
    const auto col = specfun::oscillator_column(grid.y(static_cast<int>(j)), n_max);
    std::copy(col.values.begin(), col.values.end(), y_table.begin() + j * terms);
  });

  Raster raster;
  raster.grid = grid;
  raster.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
  parallel_for(static_cast<std::size_t>(grid.nx), threads, [&](std::size_t i) {
    const auto col = specfun::oscillator_column(grid.x(static_cast<int>(i)), n_max + state.q);
    std::vector<complex> weighted(terms);
    for (std::size_t n = 0; n < terms; ++n) weighted[n] = state.coeffs[n] * col.values[n + state.q];
    for (int j = 0; j < grid.ny; ++j) {
      const double* phi_y = y_table.data() + static_cast<std::size_t>(j) * terms;
      complex psi = 0.0;
      for (std::size_t n = 0; n < terms; ++n) psi += weighted[n] * phi_y[n];
      raster.values[i * grid.ny + j] = std::norm(psi);
    }
  });

  double boundary_max = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    boundary_max = std::max({boundary_max, raster.at(i, 0), raster.at(i, grid.ny - 1)});
  }
  for (int j = 0; j < grid.ny; ++j) {
    boundary_max = std::max({boundary_max, raster.at(0, j), raster.at(grid.nx - 1, j)});
  }
  if (std::sqrt(boundary_max) >= kBoundaryAmplitudeLimit) {
    throw GridTooSmallError("quadrature: |psi| reaches " + fmt17(std::sqrt(boundary_max)) +
                            " on the grid boundary (limit " + fmt17(kBoundaryAmplitudeLimit) +
                            "); widen the grid");
  }

  double integral = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    double row = 0.0;
    for (int j = 0; j < grid.ny; ++j) row += trapezoid_weight(j, grid.ny) * raster.at(i, j);
    integral += trapezoid_weight(i, grid.nx) * row;
  }
  raster.norm_estimate = integral * grid.dx() * grid.dy();
  return raster;
}

Asymmetry measure_asymmetry(const Raster& raster) {
  const GridSpec& g = raster.grid;
  if (g.nx != g.ny || g.x_min != -g.x_max || g.y_min != -g.y_max || g.x_max != g.y_max) {
    throw ValidationError("asymmetry: grid must be square and centered on the origin");
  }
  const int n = g.nx;
  Asymmetry a;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double p = raster.at(i, j);
      a.swap = std::max(a.swap, std::abs(p - raster.at(j, i)));
      a.point = std::max(a.point, std::abs(p - raster.at(n - 1 - i, n - 1 - j)));
      a.x_parity = std::max(a.x_parity, std::abs(p - raster.at(n - 1 - i, j)));
      a.y_parity = std::max(a.y_parity, std::abs(p - raster.at(i, n - 1 - j)));
    }
  }
  return a;
}

void write_matrix(std::ostream& out, const Raster& raster, const std::string& state_label) {
  const GridSpec& g = raster.grid;
  out << "# grid x=[" << fmt17(g.x_min) << ", " << fmt17(g.x_max) << "] y=[" << fmt17(g.y_min)
      << ", " << fmt17(g.y_max) << "]\n";
  out << "# nodes nx=" << g.nx << " ny=" << g.ny << "\n";
  out << "# norm_estimate " << fmt17(raster.norm_estimate) << "\n";
  out << "# state " << state_label << "\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i) out << ' ';
      out << fmt17(raster.at(i, j));
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, const Raster& raster) {
  const GridSpec& g = raster.grid;
  out << "x,y,p\n";
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      out << fmt17(g.x(i)) << ',' << fmt17(g.y(j)) << ',' << fmt17(raster.at(i, j)) << '\n';
    }
  }
}

}  // namespace quadrature
}  // namespace paircat
