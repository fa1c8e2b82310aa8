#include "darkcavity/feshbach2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "darkcavity/errors.hpp"

namespace darkcavity {

ProductBasisSpec make_product_basis(Grid x_grid, int n_y_basis,
                                    double y_reference_frequency) {
  if (n_y_basis < 2) throw DomainError("ProductBasisSpec: n_y_basis must be >= 2");
  if (!(y_reference_frequency > 0.0))
    throw DomainError("ProductBasisSpec: reference frequency must be positive");
  return ProductBasisSpec{std::move(x_grid), n_y_basis, y_reference_frequency};
}

namespace {

// Oscillator-basis matrices for mass mu and frequency omega_ref:
//   <m|T_Y|m>      = (omega/2)(m + 1/2),  <m|T_Y|m+2>  = -(omega/4) s(m),
//   <m|Y^2|m>      = (m + 1/2)/(mu omega), <m|Y^2|m+2> = s(m)/(2 mu omega),
// with s(m) = sqrt((m+1)(m+2)).
Eigen::MatrixXd kinetic_y(int n, double omega) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    t(m, m) = 0.5 * omega * (m + 0.5);
    if (m + 2 < n) {
      const double s = std::sqrt(double(m + 1) * (m + 2));
      t(m, m + 2) = -0.25 * omega * s;
      t(m + 2, m) = t(m, m + 2);
    }
  }
  return t;
}

Eigen::MatrixXd y_squared(int n, double mu, double omega) {
  Eigen::MatrixXd y2 = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    y2(m, m) = (m + 0.5) / (mu * omega);
    if (m + 2 < n) {
      const double s = std::sqrt(double(m + 1) * (m + 2));
      y2(m, m + 2) = s / (2.0 * mu * omega);
      y2(m + 2, m) = y2(m, m + 2);
    }
  }
  return y2;
}

}  // namespace

OperatorMatrix build_hamiltonian_2d(const RphSurface& surface,
                                    const ProductBasisSpec& basis,
                                    const ScalingSpec& scaling,
                                    const Feshbach2dOptions& options) {
  const int nx = basis.x_grid.n_points;
  const int ny = basis.n_y_basis;
  const long total = static_cast<long>(nx) * ny;
  if (total > options.dimension_cap)
    throw DimensionCap("build_hamiltonian_2d: dimension " + std::to_string(total) +
                       " exceeds cap " + std::to_string(options.dimension_cap));

  const double mu = surface.reduced_mass;
  const OperatorMatrix tx = kinetic_matrix(basis.x_grid, mu, scaling);
  const Eigen::MatrixXd ty = kinetic_y(ny, basis.y_reference_frequency);
  const Eigen::MatrixXd y2 = y_squared(ny, mu, basis.y_reference_frequency);

  const Complex rot = std::exp(Complex(0.0, scaling.theta));

  OperatorMatrix out;
  out.entries = Eigen::MatrixXcd::Zero(total, total);
  // Index (k, m) -> k * ny + m.
  for (int k = 0; k < nx; ++k) {
    const Complex xz = basis.x_grid.point(k) * rot;
    const Complex vsb = eval_static_barrier(surface.static_barrier, xz);
    const Complex om = eval_frequency(surface.frequency, xz);
    const Complex coupling = 0.5 * mu * om * om;
    for (int m = 0; m < ny; ++m) {
      const long row = static_cast<long>(k) * ny + m;
      out.entries(row, row) += vsb + ty(m, m) + coupling * y2(m, m);
      if (m + 2 < ny) {
        const long col = row + 2;
        const Complex val = ty(m, m + 2) + coupling * y2(m, m + 2);
        out.entries(row, col) += val;
        out.entries(col, row) += val;
      }
      // X kinetic energy, diagonal in the oscillator index.
      for (int kp = 0; kp < nx; ++kp)
        out.entries(row, static_cast<long>(kp) * ny + m) += tx.entries(k, kp);
    }
  }
  return out;
}

PoleSet solve_2d_resonances(const RphSurface& surface, const ProductBasisSpec& basis,
                            double theta_center, double theta_span, int n_theta,
                            const Feshbach2dOptions& options) {
  if (n_theta < 3) throw DomainError("solve_2d_resonances: n_theta must be >= 3");
  if (!(theta_span > 0.0))
    throw DomainError("solve_2d_resonances: theta_span must be > 0");

  ResonanceOptions ropts = options.resonance;
  ropts.eigensolve.dimension_cap =
      std::max(ropts.eigensolve.dimension_cap, options.dimension_cap);

  const auto build = [&](double th) {
    return build_hamiltonian_2d(surface, basis, make_scaling(th), options);
  };

  const Eigensystem center = eigensolve(build(theta_center), ropts.eigensolve);
  std::vector<Eigen::VectorXcd> flank_values;
  std::vector<double> flank_thetas;
  for (int i = 0; i < n_theta; ++i) {
    const double th = theta_center - 0.5 * theta_span + theta_span * i / (n_theta - 1);
    if (std::abs(th - theta_center) < 1.0e-12) continue;
    flank_values.push_back(eigenvalues_only(build(th), ropts.eigensolve));
    flank_thetas.push_back(th);
  }

  const int n = static_cast<int>(center.values.size());
  const double pr_cap = ropts.participation_fraction * n;
  // Lowest-channel asymptote: V_SB + Omega/2 at the grid edges.
  const double threshold =
      channel_threshold_energy(adiabatic_channel_of(surface, 0), basis.x_grid);
  PoleSet out;
  out.grid = basis.x_grid;
  out.theta_center = theta_center;
  out.theta_span = theta_span;
  out.n_theta = n_theta;

  for (int i = 0; i < n; ++i) {
    const Complex lambda = center.values[i];
    if (lambda.imag() > ropts.imag_tolerance) continue;

    double velocity = 0.0;
    for (std::size_t f = 0; f < flank_values.size(); ++f) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < flank_values[f].size(); ++j)
        best = std::min(best, std::abs(flank_values[f][j] - lambda));
      velocity = std::max(velocity, best / std::abs(flank_thetas[f] - theta_center));
    }
    if (velocity > ropts.stability_threshold_per_rad) continue;

    double p2 = 0.0;
    double p4 = 0.0;
    double edges = 0.0;
    const int ny = basis.n_y_basis;
    const int band = std::max(1, static_cast<int>(basis.x_grid.n_points *
                                                  ropts.edge_fraction));
    for (Eigen::Index k = 0; k < center.vectors.rows(); ++k) {
      const double w = std::norm(center.vectors(k, i));
      p2 += w;
      p4 += w * w;
      const int kx = static_cast<int>(k) / ny;  // X-major layout
      if (kx < band || kx >= basis.x_grid.n_points - band) edges += w;
    }
    if (p2 * p2 / p4 >= pr_cap) continue;
    if (edges / p2 > ropts.edge_weight_cap) continue;

    ResonancePole pole;
    pole.energy = lambda.real();
    pole.width = std::max(0.0, -2.0 * lambda.imag());
    if (pole.width > ropts.width_ceiling) continue;
    if (ropts.drop_subthreshold && pole.width >= ropts.width_floor &&
        pole.energy <= threshold)
      continue;
    pole.classification =
        pole.width < ropts.width_floor ? PoleClass::Bound : PoleClass::Resonance;
    pole.wavefunction = center.vectors.col(i);  // product-basis coefficients
    pole.theta_used = theta_center;
    out.poles.push_back(std::move(pole));
  }

  if (out.poles.empty())
    throw NoStablePoles("solve_2d_resonances: no theta-stable localized pole found");

  std::sort(out.poles.begin(), out.poles.end(), [](const auto& a, const auto& b) {
    if (a.width != b.width) return a.width < b.width;
    return a.energy < b.energy;
  });
  if (ropts.keep_longest > 0 &&
      static_cast<int>(out.poles.size()) > ropts.keep_longest)
    out.poles.resize(ropts.keep_longest);

  std::ostringstream prov;
  prov << "2d mu=" << surface.reduced_mass << " nx=" << basis.x_grid.n_points
       << " ny=" << basis.n_y_basis << " omega_ref=" << basis.y_reference_frequency
       << " theta=" << theta_center << "+-" << 0.5 * theta_span;
  out.provenance = prov.str();
  return out;
}

AgreementReport compare_adiabatic(const PoleSet& poles_2d, const PoleSet& poles_1d) {
  if (poles_1d.poles.empty() || poles_2d.poles.empty())
    throw DomainError("compare_adiabatic: both pole sets must be non-empty");

  AgreementReport report;
  std::vector<bool> taken(poles_2d.poles.size(), false);

  // The 1D set is already width-sorted; greedily claim the nearest 2D pole.
  for (const auto& p1 : poles_1d.poles) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < poles_2d.poles.size(); ++j) {
      if (taken[j]) continue;
      const double dist = std::abs(poles_2d.poles[j].pole() - p1.pole());
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) {
      report.unmatched_1d.push_back(p1.pole());
      continue;
    }
    taken[best] = true;
    const auto& p2 = poles_2d.poles[best];
    AgreementReport::Pair pair;
    pair.e_1d = p1.energy;
    pair.gamma_1d = p1.width;
    pair.e_2d = p2.energy;
    pair.gamma_2d = p2.width;
    pair.rel_position = std::abs(p2.energy - p1.energy) /
                        std::max(std::abs(p1.energy), 1.0e-300);
    pair.rel_width =
        std::abs(p2.width - p1.width) / std::max(std::abs(p1.width), 1.0e-300);
    report.pairs.push_back(pair);
  }
  for (std::size_t j = 0; j < poles_2d.poles.size(); ++j)
    if (!taken[j]) report.unmatched_2d.push_back(poles_2d.poles[j].pole());

  for (const auto& pair : report.pairs) {
    report.max_rel_position = std::max(report.max_rel_position, pair.rel_position);
    report.mean_rel_position += pair.rel_position;
    report.max_rel_width = std::max(report.max_rel_width, pair.rel_width);
    report.mean_rel_width += pair.rel_width;
  }
  if (!report.pairs.empty()) {
    report.mean_rel_position /= static_cast<double>(report.pairs.size());
    report.mean_rel_width /= static_cast<double>(report.pairs.size());
  }
  return report;
}

}  // namespace darkcavity
