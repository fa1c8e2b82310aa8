#include "darkcavity/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "darkcavity/errors.hpp"

namespace darkcavity {

std::string to_string(PoleClass c) {
  switch (c) {
    case PoleClass::Bound: return "bound";
    case PoleClass::Resonance: return "resonance";
    case PoleClass::TS: return "TS";
    case PoleClass::DB: return "DB";
    case PoleClass::Nonphysical: return "nonphysical";
  }
  return "unknown";
}

OperatorMatrix build_hamiltonian_1d(const AdiabaticChannel& channel, const Grid& grid,
                                    const ScalingSpec& scaling) {
  OperatorMatrix h = kinetic_matrix(grid, channel.reduced_mass, scaling);
  const OperatorMatrix v = potential_matrix(
      [&](Complex z) { return eval_adiabatic(channel, z); }, grid, scaling);
  h.entries += v.entries;
  return h;
}

namespace {

double participation_ratio(const Eigen::VectorXcd& v) {
  // PR = (sum |v|^2)^2 / sum |v|^4; ~1 for a delta spike, ~n for a plane wave.
  double p2 = 0.0;
  double p4 = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double w = std::norm(v[k]);
    p2 += w;
    p4 += w * w;
  }
  return p2 * p2 / p4;
}

// |psi|^2 fraction sitting in the outer bands of the grid; box-edge artifacts
// score near 1, genuine square-integrable resonances near 0.
double edge_weight(const Eigen::VectorXcd& v, double edge_fraction) {
  const Eigen::Index n = v.size();
  const Eigen::Index band = std::max<Eigen::Index>(1, n * edge_fraction);
  double total = 0.0;
  double edges = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = std::norm(v[k]);
    total += w;
    if (k < band || k >= n - band) edges += w;
  }
  return edges / total;
}

double nearest_distance(const Eigen::VectorXcd& spectrum, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < spectrum.size(); ++k)
    best = std::min(best, std::abs(spectrum[k] - z));
  return best;
}

std::vector<double> theta_list(double center, double span, int n_theta) {
  std::vector<double> thetas(n_theta);
  for (int i = 0; i < n_theta; ++i)
    thetas[i] = center - 0.5 * span + span * i / (n_theta - 1);
  return thetas;
}

}  // namespace

PoleSet find_resonances(const AdiabaticChannel& channel, const Grid& grid,
                        double theta_center, double theta_span, int n_theta,
                        const ResonanceOptions& options) {
  if (n_theta < 3) throw DomainError("find_resonances: n_theta must be >= 3");
  if (!(theta_span > 0.0)) throw DomainError("find_resonances: theta_span must be > 0");
  const auto thetas = theta_list(theta_center, theta_span, n_theta);
  for (double th : thetas) make_scaling(th);  // range check

  // Full decomposition only at the central angle; the flanking solves feed
  // the theta-trajectory filter and need eigenvalues only.
  const Eigensystem center =
      eigensolve(build_hamiltonian_1d(channel, grid, make_scaling(theta_center)),
                 options.eigensolve);
  std::vector<Eigen::VectorXcd> flank_values;
  std::vector<double> flank_thetas;
  for (double th : thetas) {
    if (std::abs(th - theta_center) < 1.0e-12) continue;
    flank_values.push_back(eigenvalues_only(
        build_hamiltonian_1d(channel, grid, make_scaling(th)), options.eigensolve));
    flank_thetas.push_back(th);
  }

  const int n = static_cast<int>(center.values.size());
  const double pr_cap = options.participation_fraction * n;
  const double threshold = channel_threshold_energy(channel, grid);
  PoleSet out;
  out.grid = grid;
  out.theta_center = theta_center;
  out.theta_span = theta_span;
  out.n_theta = n_theta;

  for (int i = 0; i < n; ++i) {
    const Complex lambda = center.values[i];
    if (lambda.imag() > options.imag_tolerance) continue;

    double velocity = 0.0;
    for (std::size_t f = 0; f < flank_values.size(); ++f) {
      const double drift = nearest_distance(flank_values[f], lambda);
      velocity = std::max(velocity, drift / std::abs(flank_thetas[f] - theta_center));
    }
    if (velocity > options.stability_threshold_per_rad) continue;

    if (participation_ratio(center.vectors.col(i)) >= pr_cap) continue;
    if (edge_weight(center.vectors.col(i), options.edge_fraction) >
        options.edge_weight_cap)
      continue;

    ResonancePole pole;
    pole.energy = lambda.real();
    pole.width = std::max(0.0, -2.0 * lambda.imag());
    if (pole.width > options.width_ceiling) continue;
    if (options.drop_subthreshold && pole.width >= options.width_floor &&
        pole.energy <= threshold)
      continue;
    pole.classification =
        pole.width < options.width_floor ? PoleClass::Bound : PoleClass::Resonance;
    pole.wavefunction = center.vectors.col(i);
    c_normalize(pole.wavefunction, grid.spacing());
    pole.theta_used = theta_center;

    double gap = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (j != i) gap = std::min(gap, std::abs(center.values[j] - lambda));
    pole.degenerate_flag = gap < options.degeneracy_gap;

    out.poles.push_back(std::move(pole));
  }

  if (out.poles.empty())
    throw NoStablePoles("find_resonances: no theta-stable localized pole found");

  std::sort(out.poles.begin(), out.poles.end(), [](const auto& a, const auto& b) {
    if (a.width != b.width) return a.width < b.width;
    return a.energy < b.energy;
  });
  if (options.keep_longest > 0 &&
      static_cast<int>(out.poles.size()) > options.keep_longest)
    out.poles.resize(options.keep_longest);
  for (auto& pole : out.poles) pole.node_count = count_nodes(pole, grid);

  std::ostringstream prov;
  prov << "mu=" << channel.reduced_mass << " n_perp=" << channel.n_perp << " grid=["
       << grid.x_min << "," << grid.x_max << "]x" << grid.n_points
       << " theta=" << theta_center << "+-" << 0.5 * theta_span << " n_theta=" << n_theta;
  out.provenance = prov.str();
  return out;
}

int count_nodes(const ResonancePole& pole, const Grid& grid,
                const NodeCountOptions& options) {
  const Eigen::VectorXcd& psi = pole.wavefunction;
  if (psi.size() != grid.n_points)
    throw GridMismatch("count_nodes: wavefunction does not match grid");
  const int n = grid.n_points;
  std::vector<double> density(n);
  double global_max = 0.0;
  for (int k = 0; k < n; ++k) {
    density[k] = std::norm(psi[k]);
    global_max = std::max(global_max, density[k]);
  }
  const double floor = options.tail_floor * global_max;

  // Alternating sequence of significant maxima and the minima between them.
  std::vector<int> maxima;
  for (int k = 1; k + 1 < n; ++k)
    if (density[k] > density[k - 1] && density[k] >= density[k + 1] &&
        density[k] > floor)
      maxima.push_back(k);

  int nodes = 0;
  for (std::size_t m = 0; m + 1 < maxima.size(); ++m) {
    double dip = std::numeric_limits<double>::infinity();
    for (int k = maxima[m] + 1; k < maxima[m + 1]; ++k) dip = std::min(dip, density[k]);
    const double envelope = std::sqrt(density[maxima[m]] * density[maxima[m + 1]]);
    if (dip < options.depth_fraction * envelope) ++nodes;
  }
  return nodes;
}

double channel_threshold_energy(const AdiabaticChannel& channel, const Grid& grid) {
  const double left = eval_adiabatic(channel, Complex(grid.x_min, 0.0)).real();
  const double right = eval_adiabatic(channel, Complex(grid.x_max, 0.0)).real();
  return std::min(left, right);
}

double channel_barrier_top(const AdiabaticChannel& channel, const Grid& grid) {
  double top = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.n_points; ++k)
    top = std::max(top, eval_adiabatic(channel, Complex(grid.point(k), 0.0)).real());
  return top;
}

PoleSet classify_poles(PoleSet poles, const AdiabaticChannel& channel,
                       const ClassifyOptions& options) {
  // Shape poles of the bare static barrier are the false resonances; an
  // adiabatic pole with a close bare counterpart is tagged nonphysical.
  AdiabaticChannel bare = channel;
  bare.frequency = FrequencyProfile{ConstantProfile{0.0}};

  std::vector<Complex> bare_poles;
  try {
    const double span = poles.theta_span > 0.0 ? poles.theta_span : 0.1;
    const int n_theta = poles.n_theta >= 3 ? poles.n_theta : 3;
    // Every bare pole is a match candidate, however broad.
    ResonanceOptions bare_options = options.resonance;
    bare_options.width_ceiling = std::numeric_limits<double>::infinity();
    bare_options.keep_longest = 0;
    const PoleSet bare_set = find_resonances(bare, poles.grid, poles.theta_center, span,
                                             n_theta, bare_options);
    for (const auto& p : bare_set.poles) bare_poles.push_back(p.pole());
  } catch (const NoStablePoles&) {
    // A structureless bare channel (e.g. V_SB = 0) supports no poles at all.
  }

  const double threshold = channel_threshold_energy(channel, poles.grid);
  const double top = channel_barrier_top(channel, poles.grid);
  const double window_hi = top + options.barrier_window_margin * (top - threshold);

  for (auto& pole : poles.poles) {
    if (pole.classification == PoleClass::Bound) continue;
    const Complex z = pole.pole();
    const double radius =
        std::max(options.match_radius_fraction * std::abs(z), options.match_radius_min);
    bool matched = false;
    for (const Complex b : bare_poles)
      if (std::abs(b - z) < radius) {
        matched = true;
        break;
      }
    // Physical poles sit above the channel threshold; everything else only
    // serves as basis-set filler.
    pole.classification = (matched || pole.energy <= threshold)
                              ? PoleClass::Nonphysical
                              : PoleClass::Resonance;
  }

  // TS: narrowest physical pole inside the barrier-top window. The set is
  // width-sorted, so the first hit wins.
  ResonancePole* ts = nullptr;
  for (auto& pole : poles.poles) {
    if (pole.classification != PoleClass::Resonance) continue;
    if (pole.energy > threshold && pole.energy <= window_hi) {
      ts = &pole;
      break;
    }
  }
  if (ts) {
    ts->classification = PoleClass::TS;
    for (auto& pole : poles.poles)
      if (pole.classification == PoleClass::Resonance) pole.classification = PoleClass::DB;
  } else if (options.require_transition_state) {
    throw NoTransitionState(
        "classify_poles: no physical pole in the adiabatic barrier window (" +
        std::to_string(threshold) + ", " + std::to_string(window_hi) + "] Hartree");
  }
  return poles;
}

Complex transition_dipole(const ResonancePole& a, const ResonancePole& b,
                          const AdiabaticChannel& channel, const Grid& grid) {
  if (a.wavefunction.size() != grid.n_points || b.wavefunction.size() != grid.n_points)
    throw GridMismatch("transition_dipole: wavefunctions do not match the grid");
  if (a.theta_used != b.theta_used)
    throw GridMismatch("transition_dipole: poles computed at different angles");

  const Complex rot = std::exp(Complex(0.0, a.theta_used));
  Complex d(0.0, 0.0);
  for (int k = 0; k < grid.n_points; ++k) {
    const Complex gradient = eval_adiabatic_gradient(channel, grid.point(k) * rot);
    // psi_a psi_b first: the bilinear product keeps d(a,b) == d(b,a) bitwise.
    d += gradient * (a.wavefunction[k] * b.wavefunction[k]);
  }
  return d * grid.spacing();
}

}  // namespace darkcavity
