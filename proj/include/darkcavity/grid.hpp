#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace darkcavity {

using Complex = std::complex<double>;

// Uniform 1D grid in mass-weighted coordinates (Bohr).
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_points = 0;

  double spacing() const { return (x_max - x_min) / (n_points - 1); }
  double point(int k) const { return x_min + k * spacing(); }
  std::vector<double> points() const;

  bool operator==(const Grid&) const = default;
};

// Validates x_max > x_min and n_points >= 16; throws DomainError otherwise.
Grid make_grid(double x_min, double x_max, int n_points);

// Uniform complex scaling x -> x e^{i theta}. theta = 0 is the unrotated
// (Hermitian) limit; resonance runs need theta > 0.
struct ScalingSpec {
  double theta = 0.0;
  enum class Kind { Uniform } kind = Kind::Uniform;
};

ScalingSpec make_scaling(double theta);

// Dense complex-symmetric operator in the grid representation. Symmetry is
// exact by construction (M == M^T entrywise), never merely approximate.
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  bool complex_symmetric = true;

  int dimension() const { return static_cast<int>(entries.rows()); }
};

// Sinc-DVR (Colbert-Miller) second-derivative kinetic operator,
//   T = -(1/(2 mass)) e^{-2 i theta} D2,
// dense with spectral accuracy on uniform grids. mass in electron masses.
OperatorMatrix kinetic_matrix(const Grid& grid, double mass, const ScalingSpec& scaling);

// Diagonal potential matrix V(x_k e^{i theta}) via analytic continuation of
// the supplied closed-form model. The callback must be continuable; raw
// tabulated models throw NonContinuableModel from inside the callback.
using PotentialFn = std::function<Complex(Complex)>;
OperatorMatrix potential_matrix(const PotentialFn& model, const Grid& grid,
                                const ScalingSpec& scaling);

}  // namespace darkcavity
