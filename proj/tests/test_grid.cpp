#include <doctest.h>

#include <cmath>
#include <complex>

#include "darkcavity/eigensolver.hpp"
#include "darkcavity/errors.hpp"
#include "darkcavity/grid.hpp"
#include "darkcavity/potentials.hpp"

using namespace darkcavity;

TEST_CASE("make_grid basics") {
  const Grid g = make_grid(-10.0, 10.0, 21);
  CHECK(g.spacing() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.point(10) == doctest::Approx(0.0).epsilon(1e-15));

  const Grid g2 = make_grid(0.0, 1.0, 16);
  CHECK(g2.spacing() == doctest::Approx(1.0 / 15.0).epsilon(1e-15));

  // Default O+D2 grid.
  const Grid g3 = make_grid(-18.0, 18.0, 601);
  CHECK(g3.spacing() == doctest::Approx(0.06).epsilon(1e-14));

  CHECK_THROWS_AS(make_grid(1.0, 1.0, 32), DomainError);
  CHECK_THROWS_AS(make_grid(2.0, 1.0, 32), DomainError);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 15), DomainError);
}

TEST_CASE("scaling angle validation") {
  CHECK_NOTHROW(make_scaling(0.0));
  CHECK_NOTHROW(make_scaling(0.75));
  CHECK_THROWS_AS(make_scaling(-0.1), DomainError);
  CHECK_THROWS_AS(make_scaling(1.6), DomainError);
}

TEST_CASE("kinetic matrix: theta = 0 is real, rotation factorizes") {
  const Grid g = make_grid(-5.0, 5.0, 32);
  const OperatorMatrix t0 = kinetic_matrix(g, 1.0, make_scaling(0.0));
  for (int i = 0; i < g.n_points; ++i)
    for (int j = 0; j < g.n_points; ++j) CHECK(t0.entries(i, j).imag() == 0.0);

  // Uniform scaling multiplies every entry by the same phase.
  const OperatorMatrix t = kinetic_matrix(g, 1.0, make_scaling(0.75));
  const Complex phase = std::exp(Complex(0.0, -1.5));
  for (int i = 0; i < g.n_points; ++i)
    for (int j = 0; j < g.n_points; ++j)
      CHECK(std::abs(t.entries(i, j) - phase * t0.entries(i, j)) == 0.0);
}

TEST_CASE("operator matrices are complex symmetric exactly") {
  const Grid g = make_grid(-7.0, 9.0, 41);
  const OperatorMatrix t = kinetic_matrix(g, 2.5, make_scaling(0.6));
  CHECK((t.entries - t.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const OperatorMatrix v = potential_matrix(
      [](Complex z) { return z * z; }, g, make_scaling(0.6));
  CHECK((v.entries - v.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("potential matrix entries") {
  const Grid g = make_grid(-3.0, 3.0, 31);

  // Constant potential is theta-invariant.
  const OperatorMatrix c = potential_matrix(
      [](Complex) { return Complex(0.7, 0.0); }, g, make_scaling(0.9));
  for (int k = 0; k < g.n_points; ++k) {
    CHECK(c.entries(k, k) == Complex(0.7, 0.0));
    for (int j = 0; j < g.n_points; ++j)
      if (j != k) CHECK(c.entries(k, j) == Complex(0.0, 0.0));
  }

  // Monomial continuation: x^2 -> x^2 e^{2 i theta}.
  const double theta = 0.4;
  const OperatorMatrix q =
      potential_matrix([](Complex z) { return z * z; }, g, make_scaling(theta));
  const Complex rot2 = std::exp(Complex(0.0, 2.0 * theta));
  for (int k = 0; k < g.n_points; ++k) {
    const double x = g.point(k);
    CHECK(std::abs(q.entries(k, k) - x * x * rot2) < 1e-15 * (1.0 + x * x));
  }

  // Eckart model at the origin: rotation leaves x = 0 fixed.
  const Grid go = make_grid(-18.0, 18.0, 601);
  const EckartParams eckart;
  const OperatorMatrix e = potential_matrix(
      [&](Complex z) { return eval_static_barrier(eckart, z); }, go, make_scaling(0.75));
  const double expected = 0.0180244 * std::exp(0.1);
  CHECK(std::abs(e.entries(300, 300) - Complex(expected, 0.0)) < 1e-15);
}

TEST_CASE("theta = 0 potential real for real models") {
  const Grid g = make_grid(-4.0, 4.0, 33);
  const EckartParams eckart;
  const OperatorMatrix v = potential_matrix(
      [&](Complex z) { return eval_static_barrier(eckart, z); }, g, make_scaling(0.0));
  for (int k = 0; k < g.n_points; ++k)
    CHECK(std::abs(v.entries(k, k).imag()) < 1e-18);
}

namespace {

OperatorMatrix oscillator_hamiltonian(const Grid& g, double theta) {
  OperatorMatrix h = kinetic_matrix(g, 1.0, make_scaling(theta));
  const OperatorMatrix v = potential_matrix(
      [](Complex z) { return 0.5 * z * z; }, g, make_scaling(theta));
  h.entries += v.entries;
  return h;
}

}  // namespace

TEST_CASE("harmonic oscillator under complex scaling") {
  const Grid g = make_grid(-12.0, 12.0, 401);
  const Eigensystem sys = eigensolve(oscillator_hamiltonian(g, 0.4));
  CHECK(std::abs(sys.values[0] - Complex(0.5, 0.0)) < 1e-8);
}

TEST_CASE("bound-state theta invariance") {
  // Bound oscillator levels stay at n + 1/2 for any rotation below pi/4;
  // beyond pi/4 the rotated eigenfunctions are no longer square integrable,
  // so that is the hard ceiling for this invariance. The box grows with
  // theta because the scaled states decay like exp(-cos(2 theta) x^2 / 2).
  const Grid g = make_grid(-16.0, 16.0, 321);
  for (const double theta : {0.1, 0.3, 0.5, 0.7}) {
    const Eigen::VectorXcd values = eigenvalues_only(oscillator_hamiltonian(g, theta));
    for (int n = 0; n < 5; ++n)
      CHECK(std::abs(values[n] - Complex(n + 0.5, 0.0)) < 1e-7);
  }
}

TEST_CASE("grid convergence is better than quadratic") {
  // sinc-DVR error shrinks superpolynomially when the spacing halves.
  const double theta = 0.3;
  const auto err = [&](int n) {
    const Grid g = make_grid(-10.0, 10.0, n);
    const Eigen::VectorXcd values = eigenvalues_only(oscillator_hamiltonian(g, theta));
    return std::abs(values[2] - Complex(2.5, 0.0));
  };
  const double coarse = err(41);
  const double fine = err(81);
  CHECK(fine < coarse / 4.0);  // at least quadratic
}
