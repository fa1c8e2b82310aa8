#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "darkcavity/resonance.hpp"

namespace darkcavity {

// Photon-emission frequency Re[E_TS] - Re[E_DB]; throws NoEmissionChannel
// when the DB pole does not lie below the TS.
double cavity_frequency(const ResonancePole& ts, const ResonancePole& db);

enum class MirrorConvention {
  HalfWavelength,  // L = pi c / omega  (lambda/2)
  FourPi,          // L = 4 pi c / omega (config override)
};

double mirror_distance(double omega_cav,
                       MirrorConvention convention = MirrorConvention::HalfWavelength);

// epsilon = sqrt(2 pi omega / (L A)) * sqrt(N), atomic units.
double epsilon_from_geometry(double omega_cav, double mirror_distance, double mirror_area,
                             int n_molecules);

// Cavity parameters plus the two coupled poles.
struct PolaritonSetup {
  double omega_cav = 0.0;     // Hartree
  double epsilon_cav = 0.0;   // field strength, a.u.
  double mirror_distance = 0.0;  // Bohr
  double mirror_area = 0.0;      // Bohr^2
  int n_molecules = 1;
  Complex dipole;             // d_TS,DB from the c-product integral
  ResonancePole ts;
  ResonancePole db;
  // Detuning allowance for |E_DB + omega - E_TS|; negative = 1e-3 * omega.
  double detuning_tolerance = -1.0;

  double alpha_cav() const { return epsilon_cav / (omega_cav * omega_cav); }
};

// omega_cav from the poles, L from the half-wavelength relation; throws
// NoEmissionChannel / DomainError on invalid inputs.
PolaritonSetup make_polariton_setup(const ResonancePole& ts, const ResonancePole& db,
                                    Complex dipole, double epsilon_cav,
                                    double mirror_area, int n_molecules);

// [[E_TS - i G_TS/2, alpha d], [alpha d, E_DB + omega - i G_DB/2]]; complex
// symmetric, equal diagonal real parts on resonance. Throws OffResonance.
Eigen::Matrix2cd polariton_matrix(const PolaritonSetup& setup);

struct PolaritonState {
  Complex w_plus;   // upper branch W_+
  Complex w_minus;  // lower branch W_-
  std::array<Complex, 2> a_plus;   // (A_+^TS, A_+^DB), bilinearly normalized
  std::array<Complex, 2> a_minus;  // (A_-^TS, A_-^DB)
  double weight_plus = 0.0;        // |A_+^TS|^2
  double weight_minus = 0.0;       // |A_-^TS|^2
  double e_polariton = 0.0;
  double gamma_polariton = 0.0;
  bool gamma_clamped = false;  // negative mixed width clamped to zero
  bool eigenvectors_degenerate = false;  // at/near the exceptional point
};

// Closed-form branch energies cross-checked against a numeric 2x2
// eigendecomposition (ClosedFormMismatch above 1e-12); weights come from the
// numeric eigenvectors. alpha = 0 short-circuits to the bare poles exactly.
PolaritonState polariton_eigs(const PolaritonSetup& setup);

// Mixed TS-projected pole: (E, Gamma) with Gamma >= 0.
std::pair<double, double> gamma_polariton(const PolaritonSetup& setup);

// Coupling at which the closed-form discriminant vanishes for real dipole
// (the exceptional point): alpha |d| = |G_TS - G_DB| / 4.
double exceptional_point_alpha(const PolaritonSetup& setup);

struct GammaMinResult {
  double gamma_min_plus = 0.0;
  double gamma_min_minus = 0.0;
  double gamma_min_mixed = 0.0;
  double alpha_applicable = 0.0;    // alpha^2 = Re[d^2]/(G_TS - G_DB)^2
  double epsilon_applicable = 0.0;  // alpha * omega^2
  bool complex_branch = false;      // Im[d^2] < 0 or Re[d^2] < 0
};

// Width-minimum formulas taken verbatim (atomic units); cross-report against
// a scan minimum rather than asserting equality. Throws DegenerateWidths when
// G_TS == G_DB.
GammaMinResult gamma_min_closed_form(const PolaritonSetup& setup);

struct RateScan {
  struct Sample {
    double epsilon = 0.0;
    double gamma = 0.0;
    double energy = 0.0;
    bool clamped = false;
  };
  std::vector<Sample> samples;  // strictly increasing epsilon, includes 0
  double omega_cav = 0.0;
  double mirror_distance = 0.0;
  double mirror_area = 0.0;
  int n_molecules = 1;
  Complex dipole;
  std::string provenance;
};

// gamma_polariton over the epsilon list with omega_cav held fixed. The list
// must be sorted, non-negative and contain 0; exact duplicates collapse.
RateScan scan_rate(const PolaritonSetup& setup_template,
                   const std::vector<double>& epsilon_values);

}  // namespace darkcavity
