#include <doctest.h>

#include <cmath>
#include <random>

#include "darkcavity/errors.hpp"
#include "darkcavity/potentials.hpp"

using namespace darkcavity;

namespace {

TabulatedCurve sample_function(double x_min, double x_max, int n,
                               const std::function<double(double)>& f) {
  std::vector<TabulatedCurve::Sample> rows;
  for (int i = 0; i < n; ++i) {
    const double x = x_min + (x_max - x_min) * i / (n - 1);
    rows.push_back({x, f(x)});
  }
  return make_tabulated_curve(std::move(rows));
}

}  // namespace

TEST_CASE("fit recovers an exact tanh step") {
  const double c0 = 0.021, c1 = -0.006, a = 1.7, x0 = 0.35;
  const TabulatedCurve curve = sample_function(-8.0, 8.0, 81, [&](double x) {
    return c0 + c1 * std::tanh(a * (x - x0));
  });

  FitOptions options;
  options.residual_tolerance = 1e-8;
  const FrequencyProfile profile =
      fit_tabulated(curve, FitBasis::TanhPlusGaussians, 1, options);
  const auto& fitted = std::get<FittedProfile>(profile.model);

  CHECK(fitted.max_residual < 1e-10);
  CHECK(std::abs(fitted.c0 - c0) < 1e-6);
  CHECK(std::abs(fitted.c1 - c1) < 1e-6);
  CHECK(std::abs(fitted.steepness - a) < 1e-6);
  CHECK(std::abs(fitted.center - x0) < 1e-6);
}

TEST_CASE("fit of constant samples leaves Gaussian amplitudes near zero") {
  const TabulatedCurve curve =
      sample_function(-5.0, 5.0, 41, [](double) { return 0.0137; });
  const FrequencyProfile profile = fit_tabulated(curve, FitBasis::TanhPlusGaussians, 2);
  const auto& fitted = std::get<FittedProfile>(profile.model);

  CHECK(fitted.max_residual < 1e-11);
  for (const auto& g : fitted.gaussians) CHECK(std::abs(g.amplitude) < 1e-10);
  // The reconstructed profile is flat.
  for (const double x : {-4.0, 0.0, 3.0})
    CHECK(eval_frequency(profile, Complex(x, 0.0)).real() ==
          doctest::Approx(0.0137).epsilon(1e-9));
}

TEST_CASE("fit of a noisy gaussian well stays within the noise level") {
  const double noise = 1e-4;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> jitter(-noise, noise);
  const TabulatedCurve curve = sample_function(-10.0, 10.0, 101, [&](double x) {
    return 0.02 - 0.01 * std::exp(-x * x / 2.0) + jitter(rng);
  });

  FitOptions options;
  options.residual_tolerance = 3.0 * noise;
  const FrequencyProfile profile =
      fit_tabulated(curve, FitBasis::TanhPlusGaussians, 1, options);
  const auto& fitted = std::get<FittedProfile>(profile.model);
  CHECK(fitted.max_residual < 3.0 * noise);
}

TEST_CASE("fit divergence raises") {
  // A sharp sawtooth cannot be represented by one smooth Gaussian.
  const TabulatedCurve curve = sample_function(-4.0, 4.0, 65, [](double x) {
    return std::abs(std::fmod(std::abs(x), 1.0) - 0.5);
  });
  FitOptions options;
  options.residual_tolerance = 1e-12;
  CHECK_THROWS_AS(fit_tabulated(curve, FitBasis::TanhPlusGaussians, 1, options),
                  FitDiverged);
}

TEST_CASE("fit preconditions") {
  const TabulatedCurve curve =
      sample_function(-4.0, 4.0, 16, [](double x) { return x; });
  CHECK_THROWS_AS(fit_tabulated(curve, FitBasis::TanhPlusGaussians, 0), DomainError);
}

TEST_CASE("fitted profile continues analytically") {
  const TabulatedCurve curve = sample_function(-6.0, 6.0, 61, [](double x) {
    return 0.015 + 0.005 * std::tanh(x) - 0.002 * std::exp(-x * x);
  });
  FitOptions options;
  options.residual_tolerance = 1e-7;
  const FrequencyProfile profile =
      fit_tabulated(curve, FitBasis::TanhPlusGaussians, 1, options);
  // Complex evaluation works and reduces to the real value on the axis.
  const Complex at_real = eval_frequency(profile, Complex(0.7, 0.0));
  CHECK(at_real.imag() == 0.0);
  const Complex rotated = eval_frequency(profile, Complex(0.7, 0.2));
  CHECK(std::isfinite(rotated.real()));
  CHECK(std::abs(rotated - at_real) > 0.0);  // genuinely depends on Im x
}
