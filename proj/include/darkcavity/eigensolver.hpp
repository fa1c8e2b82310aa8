#pragma once

#include <Eigen/Dense>

#include "darkcavity/grid.hpp"

namespace darkcavity {

struct EigensolveOptions {
  int dimension_cap = 4096;
  // Verify ||M v - lambda v|| / ||v|| < residual_tolerance for every pair.
  bool check_residuals = true;
  double residual_tolerance = 1.0e-9;
};

// Full spectrum, sorted by ascending real part (ties by imaginary part).
// vectors.col(i) belongs to values[i]; columns have unit Euclidean norm.
struct Eigensystem {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

// Dense general complex eigendecomposition (Hessenberg + shifted QR via
// LAPACK zgeev). Throws NoConvergence on QR failure or residual violation,
// DimensionCap above the configured cap.
Eigensystem eigensolve(const OperatorMatrix& matrix, const EigensolveOptions& options = {});

// Eigenvalues only; same sorting, roughly a third of the cost.
Eigen::VectorXcd eigenvalues_only(const OperatorMatrix& matrix,
                                  const EigensolveOptions& options = {});

// Bilinear (conjugation-free) inner product sum_k a_k b_k * spacing.
Complex c_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double spacing);

// Scale v so that sum_k v_k^2 * spacing = 1. Throws DomainError when the
// bilinear norm is numerically self-orthogonal.
void c_normalize(Eigen::VectorXcd& v, double spacing);

}  // namespace darkcavity
