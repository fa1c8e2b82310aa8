#include "darkcavity/grid.hpp"

#include <cmath>
#include <numbers>

#include "darkcavity/errors.hpp"

namespace darkcavity {

std::vector<double> Grid::points() const {
  std::vector<double> xs(n_points);
  for (int k = 0; k < n_points; ++k) xs[k] = point(k);
  return xs;
}

Grid make_grid(double x_min, double x_max, int n_points) {
  if (!(x_max > x_min)) throw DomainError("make_grid: x_max must exceed x_min");
  if (n_points < 16) throw DomainError("make_grid: n_points must be >= 16");
  return Grid{x_min, x_max, n_points};
}

ScalingSpec make_scaling(double theta) {
  // theta = 0 is admitted so the unrotated operators remain constructible.
  if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2.0))
    throw DomainError("make_scaling: theta must lie in [0, pi/2)");
  return ScalingSpec{theta};
}

OperatorMatrix kinetic_matrix(const Grid& grid, double mass, const ScalingSpec& scaling) {
  if (grid.n_points < 16) throw DomainError("kinetic_matrix: invalid grid");
  if (!(mass > 0.0)) throw DomainError("kinetic_matrix: mass must be positive");
  if (!(scaling.theta >= 0.0) || !(scaling.theta < std::numbers::pi / 2.0))
    throw DomainError("kinetic_matrix: invalid scaling angle");

  const int n = grid.n_points;
  const double dx = grid.spacing();
  const double pref = 1.0 / (2.0 * mass * dx * dx);

  // Real Colbert-Miller stencil first, then one uniform e^{-2 i theta} factor,
  // so the theta = 0 matrix and the rotated one differ by exactly that factor.
  Eigen::MatrixXd stencil(n, n);
  for (int i = 0; i < n; ++i) {
    stencil(i, i) = pref * std::numbers::pi * std::numbers::pi / 3.0;
    for (int j = 0; j < i; ++j) {
      const int d = i - j;
      const double sign = (d % 2 == 0) ? 1.0 : -1.0;
      const double t = pref * sign * 2.0 / (static_cast<double>(d) * d);
      stencil(i, j) = t;
      stencil(j, i) = t;
    }
  }

  OperatorMatrix out;
  const Complex factor = std::exp(Complex(0.0, -2.0 * scaling.theta));
  out.entries = factor * stencil;
  return out;
}

OperatorMatrix potential_matrix(const PotentialFn& model, const Grid& grid,
                                const ScalingSpec& scaling) {
  if (grid.n_points < 16) throw DomainError("potential_matrix: invalid grid");
  const int n = grid.n_points;
  const Complex rot = std::exp(Complex(0.0, scaling.theta));

  OperatorMatrix out;
  out.entries = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) out.entries(k, k) = model(grid.point(k) * rot);
  return out;
}

}  // namespace darkcavity
