#pragma once

#include <string>
#include <vector>

#include "darkcavity/resonance.hpp"

namespace darkcavity {

// Product basis for the 2D reaction-path surface: sinc-DVR along X, harmonic
// oscillator functions (mass mu, frequency omega_ref) along the bound Y mode.
// Complex scaling acts on X only; Y motion needs no continuation.
struct ProductBasisSpec {
  Grid x_grid;
  int n_y_basis = 8;
  double y_reference_frequency = 0.0;  // omega_ref, Hartree
};

ProductBasisSpec make_product_basis(Grid x_grid, int n_y_basis,
                                    double y_reference_frequency);

struct Feshbach2dOptions {
  int dimension_cap = 20000;
  ResonanceOptions resonance;
};

// H = T_X(theta) (x) I + I (x) T_Y + V(x e^{i theta}, Y) with the quadratic
// Y dependence integrated analytically (only m, m+-2 couplings arise).
OperatorMatrix build_hamiltonian_2d(const RphSurface& surface,
                                    const ProductBasisSpec& basis,
                                    const ScalingSpec& scaling,
                                    const Feshbach2dOptions& options = {});

// Same theta-trajectory filter as the 1D solver, applied to the 2D spectrum.
PoleSet solve_2d_resonances(const RphSurface& surface, const ProductBasisSpec& basis,
                            double theta_center, double theta_span, int n_theta,
                            const Feshbach2dOptions& options = {});

struct AgreementReport {
  struct Pair {
    double e_1d = 0.0;
    double gamma_1d = 0.0;
    double e_2d = 0.0;
    double gamma_2d = 0.0;
    double rel_position = 0.0;
    double rel_width = 0.0;
  };
  std::vector<Pair> pairs;
  std::vector<Complex> unmatched_1d;
  std::vector<Complex> unmatched_2d;
  double max_rel_position = 0.0;
  double mean_rel_position = 0.0;
  double max_rel_width = 0.0;
  double mean_rel_width = 0.0;
};

// Greedy nearest-neighbour matching in the complex plane, walking the 1D set
// by ascending width. Unmatched poles are listed, never fatal.
AgreementReport compare_adiabatic(const PoleSet& poles_2d, const PoleSet& poles_1d);

}  // namespace darkcavity
