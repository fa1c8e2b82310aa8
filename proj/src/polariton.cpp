#include "darkcavity/polariton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "darkcavity/errors.hpp"
#include "darkcavity/units.hpp"

namespace darkcavity {

double cavity_frequency(const ResonancePole& ts, const ResonancePole& db) {
  const double omega = ts.energy - db.energy;
  if (!(omega > 0.0))
    throw NoEmissionChannel(
        "cavity_frequency: the DB pole must lie below the TS (Re[E_TS] - Re[E_DB] = " +
        std::to_string(omega) + " Hartree)");
  return omega;
}

double mirror_distance(double omega_cav, MirrorConvention convention) {
  if (!(omega_cav > 0.0)) throw DomainError("mirror_distance: omega_cav must be positive");
  const double base = std::numbers::pi * units::kSpeedOfLight / omega_cav;
  return convention == MirrorConvention::HalfWavelength ? base : 4.0 * base;
}

double epsilon_from_geometry(double omega_cav, double mirror_distance, double mirror_area,
                             int n_molecules) {
  if (!(omega_cav > 0.0) || !(mirror_distance > 0.0) || !(mirror_area > 0.0))
    throw DomainError("epsilon_from_geometry: omega, L and A must be positive");
  if (n_molecules < 1) throw DomainError("epsilon_from_geometry: N must be >= 1");
  return std::sqrt(2.0 * std::numbers::pi * omega_cav / (mirror_distance * mirror_area)) *
         std::sqrt(static_cast<double>(n_molecules));
}

PolaritonSetup make_polariton_setup(const ResonancePole& ts, const ResonancePole& db,
                                    Complex dipole, double epsilon_cav,
                                    double mirror_area, int n_molecules) {
  PolaritonSetup setup;
  setup.omega_cav = cavity_frequency(ts, db);
  setup.epsilon_cav = epsilon_cav;
  setup.mirror_distance = mirror_distance(setup.omega_cav);
  setup.mirror_area = mirror_area;
  setup.n_molecules = n_molecules;
  setup.dipole = dipole;
  setup.ts = ts;
  setup.db = db;
  if (!(mirror_area > 0.0)) throw DomainError("make_polariton_setup: mirror area <= 0");
  if (n_molecules < 1) throw DomainError("make_polariton_setup: N must be >= 1");
  if (!(epsilon_cav >= 0.0))
    throw DomainError("make_polariton_setup: epsilon_cav must be >= 0");
  return setup;
}

namespace {

Complex diag_ts(const PolaritonSetup& s) {
  return Complex(s.ts.energy, -0.5 * s.ts.width);
}

Complex diag_db(const PolaritonSetup& s) {
  return Complex(s.db.energy + s.omega_cav, -0.5 * s.db.width);
}

void check_resonance_condition(const PolaritonSetup& s) {
  if (!(s.omega_cav > 0.0))
    throw DomainError("polariton: omega_cav must be positive");
  const double tol =
      s.detuning_tolerance >= 0.0 ? s.detuning_tolerance : 1.0e-3 * s.omega_cav;
  const double detuning = std::abs(s.db.energy + s.omega_cav - s.ts.energy);
  if (detuning > tol)
    throw OffResonance("polariton: detuning |E_DB + omega - E_TS| = " +
                       std::to_string(detuning) + " exceeds tolerance " +
                       std::to_string(tol));
}

}  // namespace

Eigen::Matrix2cd polariton_matrix(const PolaritonSetup& setup) {
  check_resonance_condition(setup);
  const Complex coupling = setup.alpha_cav() * setup.dipole;
  Eigen::Matrix2cd m;
  m(0, 0) = diag_ts(setup);
  m(1, 1) = diag_db(setup);
  m(0, 1) = coupling;
  m(1, 0) = coupling;
  return m;
}

PolaritonState polariton_eigs(const PolaritonSetup& setup) {
  check_resonance_condition(setup);
  PolaritonState state;
  const Complex a = diag_ts(setup);
  const Complex c = diag_db(setup);
  const Complex b = setup.alpha_cav() * setup.dipole;

  if (b == Complex(0.0, 0.0)) {
    // Uncoupled cavity: bare poles, all TS weight on the TS branch.
    state.w_plus = a;
    state.w_minus = c;
    state.a_plus = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    state.a_minus = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
    state.weight_plus = 1.0;
    state.weight_minus = 0.0;
    state.e_polariton = setup.ts.energy;
    state.gamma_polariton = setup.ts.width;
    return state;
  }

  const Complex mean = 0.5 * (a + c);
  const Complex half_split = 0.5 * (a - c);
  const Complex root = std::sqrt(half_split * half_split + b * b);
  state.w_plus = mean + root;
  state.w_minus = mean - root;

  // Independent numeric route through the dense solver.
  OperatorMatrix m2;
  m2.entries = polariton_matrix(setup);
  EigensolveOptions small;
  small.check_residuals = false;
  const Eigensystem numeric = eigensolve(m2, small);

  const double scale = std::max({1.0, std::abs(state.w_plus), std::abs(state.w_minus)});
  const double d00 = std::abs(numeric.values[0] - state.w_plus) +
                     std::abs(numeric.values[1] - state.w_minus);
  const double d01 = std::abs(numeric.values[0] - state.w_minus) +
                     std::abs(numeric.values[1] - state.w_plus);
  const int plus_col = d00 <= d01 ? 0 : 1;
  const double mismatch = std::min(d00, d01);
  if (mismatch > 2.0e-12 * scale)
    throw ClosedFormMismatch(
        "polariton_eigs: closed form and numeric eigenvalues differ by " +
        std::to_string(mismatch));

  const auto bilinear_normalize = [&state](Eigen::Vector2cd v) -> std::array<Complex, 2> {
    const Complex n2 = v[0] * v[0] + v[1] * v[1];
    if (std::abs(n2) < 1.0e-13 * v.squaredNorm()) {
      state.eigenvectors_degenerate = true;  // self-orthogonal at the EP
      return {v[0], v[1]};
    }
    const Complex s = std::sqrt(n2);
    return {v[0] / s, v[1] / s};
  };
  state.a_plus = bilinear_normalize(numeric.vectors.col(plus_col));
  state.a_minus = bilinear_normalize(numeric.vectors.col(1 - plus_col));
  state.weight_plus = std::norm(state.a_plus[0]);
  state.weight_minus = std::norm(state.a_minus[0]);

  const double gamma_plus = -2.0 * state.w_plus.imag();
  const double gamma_minus = -2.0 * state.w_minus.imag();
  state.e_polariton = state.weight_plus * state.w_plus.real() +
                      state.weight_minus * state.w_minus.real();
  double gamma = state.weight_plus * gamma_plus + state.weight_minus * gamma_minus;
  if (gamma < 0.0) {
    // A rate cannot be negative; this marks leaving the model's regime.
    gamma = 0.0;
    state.gamma_clamped = true;
  }
  state.gamma_polariton = gamma;
  return state;
}

std::pair<double, double> gamma_polariton(const PolaritonSetup& setup) {
  const PolaritonState state = polariton_eigs(setup);
  return {state.e_polariton, state.gamma_polariton};
}

double exceptional_point_alpha(const PolaritonSetup& setup) {
  const double d = std::abs(setup.dipole);
  if (!(d > 0.0)) throw DomainError("exceptional_point_alpha: zero dipole");
  return std::abs(setup.ts.width - setup.db.width) / (4.0 * d);
}

GammaMinResult gamma_min_closed_form(const PolaritonSetup& setup) {
  const double gts = setup.ts.width;
  const double gdb = setup.db.width;
  const double dg = gts - gdb;
  if (dg == 0.0 || std::abs(dg) < 1.0e-15 * (gts + gdb))
    throw DegenerateWidths("gamma_min_closed_form: Gamma_TS equals Gamma_DB");

  const Complex d2 = setup.dipole * setup.dipole;
  GammaMinResult out;
  out.complex_branch = d2.imag() < 0.0 || d2.real() < 0.0;

  const double quarter_sum = 0.25 * (gts + gdb);
  const double cross = d2.real() * d2.imag() / (dg * dg);
  const double root = cross >= 0.0 ? 2.0 * std::sqrt(cross) : 0.0;
  out.gamma_min_plus = quarter_sum + root;
  out.gamma_min_minus = quarter_sum - root;

  const double alpha2 = d2.real() / (dg * dg);
  out.alpha_applicable = alpha2 >= 0.0 ? std::sqrt(alpha2) : 0.0;
  out.epsilon_applicable = out.alpha_applicable * setup.omega_cav * setup.omega_cav;

  PolaritonSetup at_min = setup;
  at_min.epsilon_cav = out.epsilon_applicable;
  const PolaritonState state = polariton_eigs(at_min);
  out.gamma_min_mixed =
      state.weight_plus * out.gamma_min_plus + state.weight_minus * out.gamma_min_minus;
  return out;
}

RateScan scan_rate(const PolaritonSetup& setup_template,
                   const std::vector<double>& epsilon_values) {
  if (epsilon_values.empty()) throw DomainError("scan_rate: empty epsilon list");
  bool has_zero = false;
  for (std::size_t i = 0; i < epsilon_values.size(); ++i) {
    if (!(epsilon_values[i] >= 0.0))
      throw DomainError("scan_rate: epsilon values must be non-negative");
    if (i > 0 && epsilon_values[i] < epsilon_values[i - 1])
      throw DomainError("scan_rate: epsilon values must be sorted");
    if (epsilon_values[i] == 0.0) has_zero = true;
  }
  if (!has_zero) throw DomainError("scan_rate: epsilon list must contain 0");

  RateScan scan;
  scan.omega_cav = setup_template.omega_cav;
  scan.mirror_distance = setup_template.mirror_distance;
  scan.mirror_area = setup_template.mirror_area;
  scan.n_molecules = setup_template.n_molecules;
  scan.dipole = setup_template.dipole;

  PolaritonSetup setup = setup_template;
  for (std::size_t i = 0; i < epsilon_values.size(); ++i) {
    if (i > 0 && epsilon_values[i] == epsilon_values[i - 1]) continue;
    setup.epsilon_cav = epsilon_values[i];
    const PolaritonState state = polariton_eigs(setup);
    scan.samples.push_back({epsilon_values[i], state.gamma_polariton, state.e_polariton,
                            state.gamma_clamped});
  }

  std::ostringstream prov;
  prov << "omega_cav=" << scan.omega_cav << " L=" << scan.mirror_distance
       << " A=" << scan.mirror_area << " N=" << scan.n_molecules << " d=("
       << scan.dipole.real() << "," << scan.dipole.imag() << ") TS=("
       << setup_template.ts.energy << "," << setup_template.ts.width << ") DB=("
       << setup_template.db.energy << "," << setup_template.db.width << ")";
  scan.provenance = prov.str();
  return scan;
}

}  // namespace darkcavity
