#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "darkcavity/eigensolver.hpp"
#include "darkcavity/grid.hpp"
#include "darkcavity/potentials.hpp"

namespace darkcavity {

enum class PoleClass { Bound, Resonance, TS, DB, Nonphysical };

std::string to_string(PoleClass c);

// One complex pole E - i Gamma/2 of the scattering matrix, with its
// c-normalized complex-scaled eigenfunction sampled on the grid.
struct ResonancePole {
  double energy = 0.0;  // Re E, Hartree
  double width = 0.0;   // Gamma = -2 Im E, >= 0
  int node_count = -1;  // -1: not counted
  PoleClass classification = PoleClass::Resonance;
  Eigen::VectorXcd wavefunction;
  double theta_used = 0.0;
  bool degenerate_flag = false;  // near-degenerate partner in the spectrum

  Complex pole() const { return Complex(energy, -0.5 * width); }
};

// Stable poles of one channel, ordered by descending lifetime (ascending
// width).
struct PoleSet {
  std::vector<ResonancePole> poles;
  Grid grid;
  double theta_center = 0.0;
  double theta_span = 0.0;
  int n_theta = 0;
  std::string provenance;
};

struct ResonanceOptions {
  // A pole may move at most this fast along the theta trajectory
  // (Hartree per radian); 1e-7 Hartree per 0.05 rad by default.
  double stability_threshold_per_rad = 1.0e-7 / 0.05;
  // Below this width a pole is a bound state, not a resonance.
  double width_floor = 1.0e-12;
  // Poles broader than this are dropped (infinite by default).
  double width_ceiling = std::numeric_limits<double>::infinity();
  // Keep only the N longest-lived poles (0 = keep all), the way the pole
  // plots show the "highest" few resonances.
  int keep_longest = 0;
  // A resonance-width pole below the lowest channel asymptote cannot decay
  // anywhere; such branch-point artifacts are dropped. Bound states
  // (width < width_floor) are kept regardless.
  bool drop_subthreshold = true;
  // Localization: participation ratio below this fraction of the dimension.
  double participation_fraction = 0.5;
  // Poles may sit this far above the real axis before they are discarded.
  double imag_tolerance = 1.0e-10;
  // Eigenvalues closer than this are flagged degenerate and exempt from
  // c-orthogonality checks.
  double degeneracy_gap = 1.0e-8;
  // States carrying more than this |psi|^2 fraction in the outer edge_fraction
  // of grid points on either side are box artifacts, not resonances.
  double edge_fraction = 0.1;
  double edge_weight_cap = 0.25;
  EigensolveOptions eigensolve;
};

struct ClassifyOptions {
  // Nonphysical if a bare static-barrier pole lies within
  // max(match_radius_fraction * |pole|, match_radius_min).
  double match_radius_fraction = 0.10;
  double match_radius_min = 1.0e-5;
  // The TS window extends this fraction of the barrier height above the top.
  double barrier_window_margin = 0.25;
  // Throw NoTransitionState when no physical pole falls in the window.
  bool require_transition_state = true;
  ResonanceOptions resonance;
};

struct NodeCountOptions {
  // A local minimum of |psi|^2 counts as a node when it dips below this
  // fraction of the geometric mean of the adjacent maxima. Complex zeros sit
  // off the real axis, so broad resonances dip to ~0.1-0.35 of the envelope
  // rather than to zero; 0.5 reads the lobes the way a plot does.
  double depth_fraction = 0.5;
  // Maxima below this fraction of the global maximum are rotated-tail humps,
  // not lobes of the state; dips between them are not nodes.
  double tail_floor = 1.0e-4;
};

// H = T(theta) + V_ad(x e^{i theta}); complex symmetric.
OperatorMatrix build_hamiltonian_1d(const AdiabaticChannel& channel, const Grid& grid,
                                    const ScalingSpec& scaling);

// Solves at n_theta angles across [center - span/2, center + span/2] and keeps
// eigenvalues that are theta-stable, in the lower half plane, and localized.
// Eigenvectors are taken at the central angle and c-normalized. Throws
// NoStablePoles when nothing passes.
PoleSet find_resonances(const AdiabaticChannel& channel, const Grid& grid,
                        double theta_center, double theta_span, int n_theta,
                        const ResonanceOptions& options = {});

// Interior minima of |psi|^2 that dip below the configured fraction of the
// neighboring maxima.
int count_nodes(const ResonancePole& pole, const Grid& grid,
                const NodeCountOptions& options = {});

// Tags poles against the bare static-barrier channel (Omega -> 0): matches are
// nonphysical, the narrowest physical pole in the barrier-top window is the
// TS, the remaining physical poles are DB.
PoleSet classify_poles(PoleSet poles, const AdiabaticChannel& channel,
                       const ClassifyOptions& options = {});

// c-product dipole (E_a| dV_ad/dX |E_b) evaluated along the rotated contour;
// bilinear, so transition_dipole(a, b) == transition_dipole(b, a) exactly.
Complex transition_dipole(const ResonancePole& a, const ResonancePole& b,
                          const AdiabaticChannel& channel, const Grid& grid);

// Real-axis threshold energy (the lower asymptote of V_ad at the grid edges)
// and the real-axis barrier maximum; used by the classifier and reported in
// provenance.
double channel_threshold_energy(const AdiabaticChannel& channel, const Grid& grid);
double channel_barrier_top(const AdiabaticChannel& channel, const Grid& grid);

}  // namespace darkcavity
