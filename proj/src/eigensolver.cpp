#include "darkcavity/eigensolver.hpp"

#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "darkcavity/errors.hpp"

namespace darkcavity {

namespace {

void sort_system(Eigen::VectorXcd& values, Eigen::MatrixXcd* vectors) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a].real() != values[b].real()) return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });
  Eigen::VectorXcd sorted_values(n);
  for (int i = 0; i < n; ++i) sorted_values[i] = values[order[i]];
  values = std::move(sorted_values);
  if (vectors) {
    Eigen::MatrixXcd sorted_vectors(n, n);
    for (int i = 0; i < n; ++i) sorted_vectors.col(i) = vectors->col(order[i]);
    *vectors = std::move(sorted_vectors);
  }
}

Eigensystem zgeev_run(const OperatorMatrix& matrix, bool want_vectors,
                      const EigensolveOptions& options) {
  const int n = matrix.dimension();
  if (n == 0) throw DomainError("eigensolve: empty matrix");
  if (matrix.entries.rows() != matrix.entries.cols())
    throw DomainError("eigensolve: matrix must be square");
  if (n > options.dimension_cap)
    throw DimensionCap("eigensolve: dimension " + std::to_string(n) + " exceeds cap " +
                       std::to_string(options.dimension_cap));

  Eigen::MatrixXcd work = matrix.entries;  // zgeev destroys its input
  Eigensystem sys;
  sys.values.resize(n);
  if (want_vectors) sys.vectors.resize(n, n);

  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, work.data(), n,
      sys.values.data(), nullptr, 1, want_vectors ? sys.vectors.data() : nullptr,
      want_vectors ? n : 1);
  if (info != 0)
    throw NoConvergence("zgeev: QR iteration failed, info = " + std::to_string(info) +
                        (info > 0 ? " (eigenvalues " + std::to_string(info) +
                                        "..n-1 converged only)"
                                  : ""));

  if (want_vectors && options.check_residuals) {
    // One GEMM checks every pair at once: R = M V - V diag(lambda).
    Eigen::MatrixXcd r = matrix.entries * sys.vectors;
    for (int i = 0; i < n; ++i) r.col(i) -= sys.values[i] * sys.vectors.col(i);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, r.col(i).norm() / sys.vectors.col(i).norm());
    if (worst > options.residual_tolerance)
      throw NoConvergence("eigensolve: worst eigenpair residual " +
                          std::to_string(worst) + " exceeds tolerance " +
                          std::to_string(options.residual_tolerance));
  }

  sort_system(sys.values, want_vectors ? &sys.vectors : nullptr);
  return sys;
}

}  // namespace

Eigensystem eigensolve(const OperatorMatrix& matrix, const EigensolveOptions& options) {
  return zgeev_run(matrix, true, options);
}

Eigen::VectorXcd eigenvalues_only(const OperatorMatrix& matrix,
                                  const EigensolveOptions& options) {
  return zgeev_run(matrix, false, options).values;
}

Complex c_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double spacing) {
  if (a.size() != b.size()) throw GridMismatch("c_product: size mismatch");
  // No conjugation: (a|b) = sum a_k b_k dx.
  Complex s(0.0, 0.0);
  for (Eigen::Index k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * spacing;
}

void c_normalize(Eigen::VectorXcd& v, double spacing) {
  const Complex norm2 = c_product(v, v, spacing);
  const double floor = 1.0e-12 * v.squaredNorm() * spacing;
  if (std::abs(norm2) < floor)
    throw DomainError("c_normalize: state is numerically self-orthogonal");
  v /= std::sqrt(norm2);
  // The square root leaves a +-1 gauge (the bilinear norm already fixes the
  // continuous phase). Pin the sign with an index-weighted moment, which is
  // nonzero for even and odd profiles alike and stable against roundoff,
  // so cross-state products are reproducible.
  Complex pivot(0.0, 0.0);
  for (Eigen::Index k = 0; k < v.size(); ++k) pivot += static_cast<double>(k + 1) * v[k];
  if (pivot.real() < 0.0 || (pivot.real() == 0.0 && pivot.imag() < 0.0)) v = -v;
}

}  // namespace darkcavity
