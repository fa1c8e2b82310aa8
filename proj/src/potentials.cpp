#include "darkcavity/potentials.hpp"

#include <algorithm>

#include "darkcavity/errors.hpp"

namespace darkcavity {

namespace {

// cosh^2 of a real number without overflow for the arguments used here.
double cosh2(double a) {
  const double c = std::cosh(a);
  return c * c;
}

Complex sech2(Complex z) {
  const Complex c = std::cosh(z);
  return 1.0 / (c * c);
}

}  // namespace

TabulatedCurve make_tabulated_curve(std::vector<TabulatedCurve::Sample> samples) {
  if (samples.size() < 8)
    throw DomainError("TabulatedCurve: at least 8 samples required");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].x > samples[i - 1].x))
      throw DomainError("TabulatedCurve: abscissae must be strictly increasing");
  return TabulatedCurve{std::move(samples)};
}

Complex eval_static_barrier(const EckartParams& p, Complex x) {
  const double t0 = std::tanh(p.steepness * p.shift);
  const Complex bracket = std::tanh(p.steepness * (x - p.center + p.shift)) - t0;
  return -p.amplitude * cosh2(p.steepness * p.shift) * bracket * bracket +
         p.asymmetry_offset;
}

Complex eval_static_barrier(const StaticBarrier& barrier, Complex x) {
  const Complex base = std::visit(
      [&](const auto& form) -> Complex {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, ZeroBarrier>) {
          return Complex(0.0, 0.0);
        } else if constexpr (std::is_same_v<T, EckartParams>) {
          return eval_static_barrier(form, x);
        } else if constexpr (std::is_same_v<T, QuadraticBarrier>) {
          return 0.5 * form.force_constant * x * x;
        } else {
          return 0.5 * form.force_constant * x * x * std::exp(-form.damping * x * x);
        }
      },
      barrier.form);
  return base + barrier.offset;
}

Complex static_barrier_gradient(const StaticBarrier& barrier, Complex x) {
  return std::visit(
      [&](const auto& form) -> Complex {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, ZeroBarrier>) {
          return Complex(0.0, 0.0);
        } else if constexpr (std::is_same_v<T, EckartParams>) {
          const double t0 = std::tanh(form.steepness * form.shift);
          const Complex arg = form.steepness * (x - form.center + form.shift);
          const Complex bracket = std::tanh(arg) - t0;
          return -2.0 * form.amplitude * cosh2(form.steepness * form.shift) * bracket *
                 form.steepness * sech2(arg);
        } else if constexpr (std::is_same_v<T, QuadraticBarrier>) {
          return form.force_constant * x;
        } else {
          // d/dx [(k/2) x^2 e^{-b x^2}] = k x e^{-b x^2} (1 - b x^2)
          return form.force_constant * x * std::exp(-form.damping * x * x) *
                 (1.0 - form.damping * x * x);
        }
      },
      barrier.form);
}

Complex eval_frequency(const FrequencyProfile& profile, Complex x) {
  return std::visit(
      [&](const auto& m) -> Complex {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantProfile>) {
          return Complex(m.omega0, 0.0);
        } else if constexpr (std::is_same_v<T, TanhStepProfile>) {
          const double mid = 0.5 * (m.omega_left + m.omega_right);
          const double half = 0.5 * (m.omega_right - m.omega_left);
          return mid + half * std::tanh(m.steepness * (x - m.center));
        } else if constexpr (std::is_same_v<T, GaussianWellProfile>) {
          const Complex u = x - m.center;
          return m.omega_inf -
                 m.depth * std::exp(-u * u / (2.0 * m.width * m.width));
        } else if constexpr (std::is_same_v<T, FittedProfile>) {
          Complex v = m.c0 + m.c1 * std::tanh(m.steepness * (x - m.center));
          for (const auto& g : m.gaussians) {
            const Complex u = x - g.center;
            v += g.amplitude * std::exp(-g.decay * u * u);
          }
          return v;
        } else if constexpr (std::is_same_v<T, RawTableProfile>) {
          throw NonContinuableModel(
              "eval_frequency: raw tabulated profile is not analytically "
              "continuable; run fit_tabulated first");
        } else {  // SumProfile
          Complex v(0.0, 0.0);
          for (const auto& part : m.parts) v += eval_frequency(part, x);
          return v;
        }
      },
      profile.model);
}

Complex frequency_gradient(const FrequencyProfile& profile, Complex x) {
  return std::visit(
      [&](const auto& m) -> Complex {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantProfile>) {
          return Complex(0.0, 0.0);
        } else if constexpr (std::is_same_v<T, TanhStepProfile>) {
          const double half = 0.5 * (m.omega_right - m.omega_left);
          return half * m.steepness * sech2(m.steepness * (x - m.center));
        } else if constexpr (std::is_same_v<T, GaussianWellProfile>) {
          const Complex u = x - m.center;
          return m.depth * u / (m.width * m.width) *
                 std::exp(-u * u / (2.0 * m.width * m.width));
        } else if constexpr (std::is_same_v<T, FittedProfile>) {
          Complex v = m.c1 * m.steepness * sech2(m.steepness * (x - m.center));
          for (const auto& g : m.gaussians) {
            const Complex u = x - g.center;
            v += -2.0 * g.amplitude * g.decay * u * std::exp(-g.decay * u * u);
          }
          return v;
        } else if constexpr (std::is_same_v<T, RawTableProfile>) {
          throw NonContinuableModel(
              "frequency_gradient: raw tabulated profile is not analytically "
              "continuable; run fit_tabulated first");
        } else {  // SumProfile
          Complex v(0.0, 0.0);
          for (const auto& part : m.parts) v += frequency_gradient(part, x);
          return v;
        }
      },
      profile.model);
}

AdiabaticChannel validate_channel(AdiabaticChannel channel) {
  if (!(channel.reduced_mass > 0.0))
    throw DomainError("AdiabaticChannel: reduced mass must be positive");
  if (channel.n_perp < 0)
    throw DomainError("AdiabaticChannel: n_perp must be >= 0");
  return channel;
}

Complex eval_adiabatic(const AdiabaticChannel& channel, Complex x) {
  return eval_static_barrier(channel.static_barrier, x) +
         eval_frequency(channel.frequency, x) * (channel.n_perp + 0.5);
}

Complex eval_adiabatic_gradient(const AdiabaticChannel& channel, Complex x) {
  return static_barrier_gradient(channel.static_barrier, x) +
         frequency_gradient(channel.frequency, x) * (channel.n_perp + 0.5);
}

double adiabatic_gradient(const AdiabaticChannel& channel, double x) {
  // Route through the complex evaluation so real and complex paths agree
  // bitwise on the real axis.
  return eval_adiabatic_gradient(channel, Complex(x, 0.0)).real();
}

Complex eval_rph(const RphSurface& surface, Complex x, double y) {
  const Complex omega = eval_frequency(surface.frequency, x);
  return eval_static_barrier(surface.static_barrier, x) +
         0.5 * surface.reduced_mass * omega * omega * y * y;
}

AdiabaticChannel adiabatic_channel_of(const RphSurface& surface, int n_perp) {
  AdiabaticChannel channel;
  channel.reduced_mass = surface.reduced_mass;
  channel.static_barrier = surface.static_barrier;
  channel.frequency = surface.frequency;
  channel.n_perp = n_perp;
  return validate_channel(channel);
}

}  // namespace darkcavity
