#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "darkcavity/grid.hpp"

namespace darkcavity {

// ---------------------------------------------------------------------------
// Static-barrier models (the electronic potential along the reaction
// coordinate). All closed forms continue analytically to complex argument.
// ---------------------------------------------------------------------------

// Asymmetric Eckart barrier
//   V(x) = -A cosh^2(a s) [tanh(a (x - x0 + s)) - tanh(a s)]^2 + C
// with A = amplitude, s = shift, a = steepness, C = asymmetry_offset and x0
// a rigid translation. The defaults reproduce the O+D2 static barrier:
// reactant asymptote 0, maximum A e^{2 a s} at x = 0, product asymptote
// above the reactants. Uniform scaling rotates the contour about the origin,
// so scenarios place the barrier they resolve at x = 0 and translate the
// rest.
struct EckartParams {
  double amplitude = 0.0180244;       // Hartree
  double shift = 0.05;                // Bohr
  double asymmetry_offset = 0.0180244 * std::exp(0.1);  // Hartree
  double steepness = 1.0;             // 1/Bohr
  double center = 0.0;                // Bohr
};

struct ZeroBarrier {};

// V(x) = (k/2) x^2; used for oscillator checks.
struct QuadraticBarrier {
  double force_constant = 1.0;
};

// V(x) = (k/2) x^2 e^{-damping x^2}; the standard barrier-well resonance
// benchmark (well at the origin enclosed by a finite barrier).
struct GaussianDampedQuadratic {
  double force_constant = 1.0;
  double damping = 0.1;
};

struct StaticBarrier {
  std::variant<ZeroBarrier, EckartParams, QuadraticBarrier, GaussianDampedQuadratic> form =
      ZeroBarrier{};
  double offset = 0.0;  // rigid energy shift (Hartree)
};

Complex eval_static_barrier(const EckartParams& params, Complex x);
Complex eval_static_barrier(const StaticBarrier& barrier, Complex x);
Complex static_barrier_gradient(const StaticBarrier& barrier, Complex x);

// ---------------------------------------------------------------------------
// Frequency profiles Omega(X) of the perpendicular vibration. Real and
// bounded on the real line; closed forms continue analytically.
// ---------------------------------------------------------------------------

struct ConstantProfile {
  double omega0 = 0.0;  // Hartree
};

// Omega(-inf) = omega_left, Omega(+inf) = omega_right.
struct TanhStepProfile {
  double omega_left = 0.0;
  double omega_right = 0.0;
  double steepness = 1.0;  // 1/Bohr
  double center = 0.0;     // Bohr
};

// Omega(x) = omega_inf - depth exp(-(x-center)^2 / (2 width^2)).
// Negative depth gives a bump (frequency stiffens at the barrier).
struct GaussianWellProfile {
  double omega_inf = 0.0;
  double depth = 0.0;
  double width = 1.0;
  double center = 0.0;
};

struct GaussianTerm {
  double amplitude = 0.0;  // g_i
  double decay = 1.0;      // b_i (1/Bohr^2)
  double center = 0.0;     // x_i
};

// Fit result: c0 + c1 tanh(a (x - x0)) + sum_i g_i exp(-b_i (x - x_i)^2).
struct FittedProfile {
  double c0 = 0.0;
  double c1 = 0.0;
  double steepness = 1.0;  // a
  double center = 0.0;     // x0
  std::vector<GaussianTerm> gaussians;
  double max_residual = 0.0;  // against the fitted samples
};

// Ingested table that has not been fitted yet; not continuable.
struct TabulatedCurve {
  struct Sample {
    double x = 0.0;      // Bohr
    double value = 0.0;  // Hartree
  };
  std::vector<Sample> samples;  // strictly increasing x, at least 8 rows
};

TabulatedCurve make_tabulated_curve(std::vector<TabulatedCurve::Sample> samples);

struct RawTableProfile {
  TabulatedCurve curve;
};

struct FrequencyProfile;

// Multi-mode support: the perpendicular zero-point sum over independent modes
// enters as the sum of their profiles.
struct SumProfile {
  std::vector<FrequencyProfile> parts;
};

struct FrequencyProfile {
  std::variant<ConstantProfile, TanhStepProfile, GaussianWellProfile, FittedProfile,
               RawTableProfile, SumProfile>
      model = ConstantProfile{};
};

// Throws NonContinuableModel for RawTableProfile.
Complex eval_frequency(const FrequencyProfile& profile, Complex x);
Complex frequency_gradient(const FrequencyProfile& profile, Complex x);

// ---------------------------------------------------------------------------
// Channels and the 2D reaction-path surface.
// ---------------------------------------------------------------------------

// Effective 1D channel: V_ad(X) = V_SB(X) + Omega(X) (n_perp + 1/2).
struct AdiabaticChannel {
  double reduced_mass = 1.0;  // electron masses
  StaticBarrier static_barrier;
  FrequencyProfile frequency;
  int n_perp = 0;
};

AdiabaticChannel validate_channel(AdiabaticChannel channel);

Complex eval_adiabatic(const AdiabaticChannel& channel, Complex x);
Complex eval_adiabatic_gradient(const AdiabaticChannel& channel, Complex x);
double adiabatic_gradient(const AdiabaticChannel& channel, double x);

// V(X, Y) = V_SB(X) + (mu/2) Omega^2(X) Y^2, single perpendicular mode.
struct RphSurface {
  StaticBarrier static_barrier;
  FrequencyProfile frequency;
  double reduced_mass = 1.0;
};

Complex eval_rph(const RphSurface& surface, Complex x, double y);

// The 1D channel obtained from a surface in the nuclear adiabatic limit.
AdiabaticChannel adiabatic_channel_of(const RphSurface& surface, int n_perp = 0);

// ---------------------------------------------------------------------------
// Fitting of tabulated data to the continuable tanh-plus-Gaussians basis.
// ---------------------------------------------------------------------------

enum class FitBasis { TanhPlusGaussians };

struct FitOptions {
  double residual_tolerance = 1.0e-3;  // max |fit - sample|; FitDiverged above
  int max_iterations = 400;
};

// Least-squares fit of c0 + c1 tanh(a(x-x0)) + sum g_i exp(-b_i (x-x_i)^2).
// Returns a FittedProfile wrapped in FrequencyProfile; max_residual is filled.
FrequencyProfile fit_tabulated(const TabulatedCurve& curve, FitBasis basis, int n_terms,
                               const FitOptions& options = {});

}  // namespace darkcavity
