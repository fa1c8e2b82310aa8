// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier scenario pipelines are shared across criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <variant>
#include <vector>

#include "darkcavity/csvio.hpp"
#include "darkcavity/errors.hpp"
#include "darkcavity/feshbach2d.hpp"
#include "darkcavity/polariton.hpp"
#include "darkcavity/resonance.hpp"
#include "darkcavity/scenario.hpp"
#include "darkcavity/units.hpp"

using namespace darkcavity;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("%s criterion %2d: %s (%s; %.1f s)\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::filesystem::path scenario_path(const char* name) {
  const char* dir = std::getenv("DARKCAVITY_SCENARIOS");
  return std::filesystem::path(dir ? dir : "scenarios") / name;
}

struct Pipeline {
  ScenarioConfig config;
  PoleSet poles;
  const ResonancePole* ts = nullptr;
  const ResonancePole* db = nullptr;
  Complex dipole;
  PolaritonSetup setup;
  RateScan scan;
};

// poles -> classify -> DB selection -> dipole -> scan, straight from a
// shipped scenario file.
Pipeline run_pipeline(const char* scenario_file) {
  Pipeline p;
  p.config = load_scenario(scenario_path(scenario_file));
  p.poles = find_resonances(p.config.channel, p.config.grid, p.config.theta_center,
                            p.config.theta_span, p.config.n_theta, p.config.solver);
  ClassifyOptions classify = p.config.classify;
  classify.require_transition_state = true;
  p.poles = classify_poles(std::move(p.poles), p.config.channel, classify);
  for (const auto& pole : p.poles.poles)
    if (pole.classification == PoleClass::TS) p.ts = &pole;
  const int want_nodes = p.config.selection.db_by_nodes.value_or(-1);
  for (const auto& pole : p.poles.poles)
    if (pole.classification == PoleClass::DB &&
        (want_nodes < 0 || pole.node_count == want_nodes))
      if (!p.db) p.db = &pole;
  if (!p.ts || !p.db) throw NoEmissionChannel("pipeline: TS/DB pair not found");

  p.dipole = transition_dipole(*p.ts, *p.db, p.config.channel, p.poles.grid);
  p.setup = make_polariton_setup(*p.ts, *p.db, p.dipole, 0.0,
                                 p.config.cavity.mirror_area,
                                 p.config.cavity.n_molecules);
  std::vector<double> eps;
  const int count = p.config.cavity.epsilon.count;
  for (int i = 0; i < count; ++i)
    eps.push_back(p.config.cavity.epsilon.max * i / (count - 1));
  p.scan = scan_rate(p.setup, eps);
  return p;
}

Complex closed_form_branch(const PolaritonSetup& s, int sign) {
  const Complex a(s.ts.energy, -0.5 * s.ts.width);
  const Complex c(s.db.energy + s.omega_cav, -0.5 * s.db.width);
  const Complex b = s.alpha_cav() * s.dipole;
  const Complex mean = 0.5 * (a + c);
  const Complex root = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return sign > 0 ? mean + root : mean - root;
}

PolaritonSetup synthetic_setup(double e_ts, double g_ts, double e_db, double g_db,
                               Complex d, double eps) {
  ResonancePole ts;
  ts.energy = e_ts;
  ts.width = g_ts;
  ResonancePole db;
  db.energy = e_db;
  db.width = g_db;
  return make_polariton_setup(ts, db, d, eps, 1.0e8, 1);
}

void criterion_1_uncoupled(const Pipeline& arhcl, const Pipeline& odd) {
  Timer t;
  bool pass = true;
  std::string detail;
  for (const Pipeline* p : {&arhcl, &odd}) {
    const auto& first = p->scan.samples.front();
    if (first.epsilon != 0.0 || first.gamma != p->ts->width ||
        first.energy != p->ts->energy)
      pass = false;
  }
  // And for a synthetic setup, bit-exactly as well.
  PolaritonSetup s = synthetic_setup(2.0e-3, 1.0e-5, 1.8e-3, 4.0e-4,
                                     Complex(3e-7, -2e-7), 0.0);
  const auto [e0, g0] = gamma_polariton(s);
  if (e0 != 2.0e-3 || g0 != 1.0e-5) pass = false;
  report(1, "uncoupled limit is exact", pass,
         pass ? "Gamma(0) == Gamma_TS and E(0) == E_TS bitwise" : "mismatch at eps = 0",
         t.seconds());
}

void criterion_2_closed_form() {
  Timer t;
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> energy(-1.0, 1.0);
  std::uniform_real_distribution<double> width(1e-6, 0.5);
  std::uniform_real_distribution<double> mag(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double e_db = energy(rng);
    const double omega = 0.1 + std::abs(energy(rng));
    PolaritonSetup s = synthetic_setup(e_db + omega, width(rng), e_db, width(rng),
                                       Complex(mag(rng), mag(rng)), std::abs(mag(rng)));
    OperatorMatrix m2;
    m2.entries = polariton_matrix(s);
    const Eigensystem numeric = eigensolve(m2);
    const Complex wp = closed_form_branch(s, +1);
    const Complex wm = closed_form_branch(s, -1);
    const double d1 = std::abs(numeric.values[0] - wp) + std::abs(numeric.values[1] - wm);
    const double d2 = std::abs(numeric.values[0] - wm) + std::abs(numeric.values[1] - wp);
    worst = std::max(worst, std::min(d1, d2));
  }
  const bool pass = worst < 1e-12 && t.seconds() < 1.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst |closed form - numeric| = %.2e over 1000 draws",
                worst);
  report(2, "closed-form branch energies vs numeric 2x2", pass, buf, t.seconds());
}

void criterion_3_exceptional_point() {
  Timer t;
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> width(1e-5, 1e-3);
  std::uniform_real_distribution<double> mag(1e-7, 1e-6);
  double worst_width = 0.0;
  double worst_det = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    double g_ts = width(rng);
    double g_db = width(rng);
    if (g_ts == g_db) continue;
    if (g_ts > g_db) std::swap(g_ts, g_db);
    PolaritonSetup s =
        synthetic_setup(2.0e-3, g_ts, 1.9e-3, g_db, Complex(mag(rng), 0.0), 0.0);
    s.epsilon_cav = exceptional_point_alpha(s) * s.omega_cav * s.omega_cav;
    const PolaritonState state = polariton_eigs(s);
    const double avg = 0.5 * (g_ts + g_db);
    worst_width = std::max({worst_width, std::abs(-2.0 * state.w_plus.imag() - avg),
                            std::abs(-2.0 * state.w_minus.imag() - avg)});
    const double det =
        std::abs(state.a_plus[0] * state.a_minus[1] - state.a_plus[1] * state.a_minus[0]);
    const double scale =
        std::max(std::abs(state.a_plus[0]), std::abs(state.a_plus[1])) *
        std::max(std::abs(state.a_minus[0]), std::abs(state.a_minus[1]));
    worst_det = std::max(worst_det, det / scale);
  }
  const bool pass = worst_width < 1e-10 && worst_det < 1e-4 && t.seconds() < 1.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "width dev %.2e, eigenvector det %.2e", worst_width,
                worst_det);
  report(3, "exceptional-point coalescence", pass, buf, t.seconds());
}

void criterion_4_saturation() {
  Timer t;
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> base(1e-6, 1e-4);
  std::uniform_real_distribution<double> ratio(50.0, 400.0);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const double g_ts = base(rng);
    const double g_db = g_ts * ratio(rng);
    PolaritonSetup s = synthetic_setup(2.0e-3, g_ts, 1.9e-3, g_db, Complex(5e-7, 0.0), 0.0);
    s.epsilon_cav = 20.0 * exceptional_point_alpha(s) * s.omega_cav * s.omega_cav;
    const auto [e_pol, gamma] = gamma_polariton(s);
    const double avg = 0.5 * (g_ts + g_db);
    worst = std::max(worst, std::abs(gamma - avg) / avg);
  }
  const bool pass = worst < 0.05 && t.seconds() < 5.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max |Gamma_inf - avg|/avg = %.3f over 40 draws", worst);
  report(4, "large-coupling saturation at the averaged rate", pass, buf, t.seconds());
}

void criterion_5_scaling_machinery() {
  Timer t;
  // 401-point grid tuned by the boundary-vs-aliasing study; the slight
  // asymmetry cancels the leading parity error at theta = 0.75.
  const Grid g = make_grid(-24.90, 25.20, 401);
  double worst = 0.0;
  for (const double theta : {0.2, 0.5, 0.75}) {
    OperatorMatrix h = kinetic_matrix(g, 1.0, make_scaling(theta));
    h.entries +=
        potential_matrix([](Complex z) { return 0.5 * z * z; }, g, make_scaling(theta))
            .entries;
    const Eigen::VectorXcd values = eigenvalues_only(h);
    for (int n = 0; n <= 4; ++n) {
      double best = 1e9;
      for (int i = 0; i < 12; ++i)
        best = std::min(best, std::abs(values[i] - Complex(n + 0.5, 0.0)));
      worst = std::max(worst, best);
    }
  }

  // Free particle: the whole spectrum rotates to arg = -2 theta.
  const double theta = 0.35;
  const Grid gf = make_grid(-14.0, 14.0, 201);
  const Eigen::VectorXcd free_values =
      eigenvalues_only(kinetic_matrix(gf, 1.0, make_scaling(theta)));
  double worst_arg = 0.0;
  for (int i = 0; i < free_values.size(); ++i) {
    if (std::abs(free_values[i]) < 1e-6) continue;
    worst_arg = std::max(worst_arg,
                         std::abs(std::arg(free_values[i]) + 2.0 * theta) / (2.0 * theta));
  }
  const bool pass = worst < 1e-7 && worst_arg < 0.01 && t.seconds() < 10.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "oscillator dev %.2e, continuum arg dev %.2e%%", worst,
                100.0 * worst_arg);
  report(5, "complex-scaling machinery (oscillator + continuum)", pass, buf, t.seconds());
}

void criterion_6_benchmark() {
  Timer t;
  AdiabaticChannel ch;
  ch.reduced_mass = 1.0;
  ch.static_barrier.form = GaussianDampedQuadratic{1.0, 0.1};
  ch.frequency = FrequencyProfile{ConstantProfile{0.0}};

  // Narrowest stable pole near E = 2.1 on each angle of the window.
  const auto locate = [&](const Grid& g, double theta) -> Complex {
    const PoleSet set = find_resonances(ch, g, theta, 0.1, 3);
    const ResonancePole* best = nullptr;
    for (const auto& pole : set.poles) {
      if (std::abs(pole.energy - 2.1) > 0.4) continue;
      if (!best || pole.width < best->width) best = &pole;
    }
    return best ? best->pole() : Complex(0.0, 0.0);
  };

  const Grid g = make_grid(-14.0, 14.0, 401);
  const Complex at_055 = locate(g, 0.55);
  const Complex at_075 = locate(g, 0.75);
  const Complex at_095 = locate(g, 0.95);
  const double drift = std::max(std::abs(at_075 - at_055), std::abs(at_095 - at_075));

  const Grid fine = make_grid(-14.0, 14.0, 601);
  const double grid_move = std::abs(locate(fine, 0.75) - at_075);

  // Locked by this convergence study (boxes 12..15, 201..801 points).
  const Complex reference(1.853108636738, -0.5 * 1.34480508e-01);
  const double locked_dev = std::abs(at_075 - reference);

  const bool pass =
      drift < 1e-7 && grid_move < 1e-8 && locked_dev < 1e-8 && t.seconds() < 30.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "theta drift %.2e, grid move %.2e, locked dev %.2e", drift, grid_move,
                locked_dev);
  report(6, "benchmark barrier-well resonance regression", pass, buf, t.seconds());
}

void criterion_7_eckart() {
  Timer t;
  const EckartParams p;
  const double tail = std::abs(eval_static_barrier(p, Complex(-30.0, 0.0)));
  double best_v = -1.0;
  for (double x = -5.0; x <= 5.0; x += 1e-5)
    best_v = std::max(best_v, eval_static_barrier(p, Complex(x, 0.0)).real());
  const bool pass = tail < 1e-10 && std::abs(best_v - 0.02) / 0.02 < 0.05 &&
                    t.seconds() < 1.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "|V(-30)| = %.1e, max = %.6f Hartree", tail, best_v);
  report(7, "static barrier asymptote and height", pass, buf, t.seconds());
}

void criterion_8_oracle2d() {
  Timer t;
  bool pass = true;
  std::string detail;

  // Separable scenario: exact factorization, disagreement at solver noise.
  {
    const ScenarioConfig config = load_scenario(scenario_path("separable_2d.json"));
    RphSurface surface;
    surface.static_barrier = config.channel.static_barrier;
    surface.frequency = config.channel.frequency;
    surface.reduced_mass = config.channel.reduced_mass;
    const double omega_ref = *config.oracle2d.y_reference_frequency;
    const ProductBasisSpec basis =
        make_product_basis(config.grid, config.oracle2d.n_y_basis, omega_ref);
    Feshbach2dOptions f2d;
    f2d.resonance = config.solver;
    const PoleSet p2 = solve_2d_resonances(surface, basis, config.theta_center,
                                           config.theta_span, config.n_theta, f2d);
    const PoleSet p1 = find_resonances(adiabatic_channel_of(surface), config.grid,
                                       config.theta_center, config.theta_span,
                                       config.n_theta, config.solver);
    // The separable 2D poles are 1D poles shifted by omega_ref/2 exactly.
    double worst = 0.0;
    for (const auto& pole : p1.poles) {
      double best = 1e9;
      for (const auto& q : p2.poles) best = std::min(best, std::abs(q.pole() - pole.pole()));
      worst = std::max(worst, best);
    }
    if (worst >= 1e-7) pass = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "separable dev %.1e", worst);
    detail += buf;
  }

  // Gaussian-bump synthetic scenario: adiabatic 1D poles vs 2D Feshbach poles.
  {
    RphSurface surface;
    surface.static_barrier.form = ZeroBarrier{};
    surface.frequency = FrequencyProfile{GaussianWellProfile{8e-3, -2e-3, 4.0, 0.0}};
    surface.reduced_mass = 3000.0;
    const Grid g = make_grid(-20.0, 20.0, 201);
    const ProductBasisSpec basis = make_product_basis(g, 8, 6e-3);
    Feshbach2dOptions f2d;
    f2d.resonance.keep_longest = 4;
    const PoleSet p2 = solve_2d_resonances(surface, basis, 0.55, 0.1, 3, f2d);
    ResonanceOptions r1;
    r1.keep_longest = 4;
    const PoleSet p1 =
        find_resonances(adiabatic_channel_of(surface), g, 0.55, 0.1, 3, r1);
    const AgreementReport rep = compare_adiabatic(p2, p1);
    if (rep.pairs.size() < 3 || rep.max_rel_position >= 0.02 || rep.max_rel_width >= 0.20)
      pass = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "; bump relE %.2e relGamma %.2e (%zu pairs)",
                  rep.max_rel_position, rep.max_rel_width, rep.pairs.size());
    detail += buf;
  }

  pass = pass && t.seconds() < 600.0;
  report(8, "adiabatic 1D poles vs 2D Feshbach oracle", pass, detail, t.seconds());
}

void criterion_9_hygiene() {
  Timer t;
  bool pass = true;

  // Gradient vs central differences at 100 random points.
  AdiabaticChannel ch;
  ch.reduced_mass = 1.0;
  ch.static_barrier.form = EckartParams{};
  ch.frequency = FrequencyProfile{GaussianWellProfile{0.02, 0.008, 1.3, 0.4}};
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  const double h = 1e-5;
  double worst_grad = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = xs(rng);
    const double numeric = (eval_adiabatic(ch, Complex(x + h, 0.0)).real() -
                            eval_adiabatic(ch, Complex(x - h, 0.0)).real()) /
                           (2.0 * h);
    const double analytic = adiabatic_gradient(ch, x);
    worst_grad =
        std::max(worst_grad, std::abs(analytic - numeric) / std::max(1e-8, std::abs(numeric)));
  }
  if (worst_grad >= 1e-6) pass = false;

  // c-orthogonality for a complex-scaled spectrum.
  AdiabaticChannel bench;
  bench.reduced_mass = 1.0;
  bench.static_barrier.form = GaussianDampedQuadratic{1.0, 0.1};
  bench.frequency = FrequencyProfile{ConstantProfile{0.0}};
  const Grid g = make_grid(-14.0, 14.0, 301);
  const PoleSet set = find_resonances(bench, g, 0.7, 0.1, 3);
  double worst_orth = 0.0;
  for (std::size_t i = 0; i < set.poles.size(); ++i)
    for (std::size_t j = i + 1; j < set.poles.size(); ++j) {
      if (std::abs(set.poles[i].pole() - set.poles[j].pole()) <= 1e-8) continue;
      worst_orth = std::max(
          worst_orth, std::abs(c_product(set.poles[i].wavefunction,
                                         set.poles[j].wavefunction, g.spacing())));
    }
  if (worst_orth >= 1e-8) pass = false;

  // Bilinear symmetry is exact.
  const Complex dab = transition_dipole(set.poles[0], set.poles[1], bench, g);
  const Complex dba = transition_dipole(set.poles[1], set.poles[0], bench, g);
  if (dab.real() != dba.real() || dab.imag() != dba.imag()) pass = false;

  pass = pass && t.seconds() < 30.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "grad dev %.2e, c-orth %.2e, dipole symmetric", worst_grad,
                worst_orth);
  report(9, "gradient and c-product hygiene", pass, buf, t.seconds());
}

void criterion_10_paper_numbers(const Pipeline& arhcl, const Pipeline& odd) {
  Timer t;
  bool pass = true;
  std::string detail;

  // (a) The quoted frequencies flow through the cavity-geometry chain when
  // entered as scenario constants.
  {
    ResonancePole ts;
    ts.energy = 2.0e-3;
    ts.width = 1e-6;
    ResonancePole db;
    db.energy = 2.0e-3 - 1.547e-4;
    db.width = 1e-5;
    const double omega = cavity_frequency(ts, db);
    const double L = mirror_distance(omega);
    const double eps = epsilon_from_geometry(omega, L, 1.0e8, 1);
    if (std::abs(omega - 1.547e-4) > 1e-18 || !(L > 0.0) || !(eps > 0.0)) pass = false;

    const double omega_arhcl = units::mev_to_hartree(0.195);
    if (std::abs(omega_arhcl - 7.1661e-6) / 7.1661e-6 > 1e-4) pass = false;
    const double L2 = mirror_distance(omega_arhcl);
    if (std::abs(L2 - 6.008e7) / 6.008e7 > 1e-3) pass = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "flow-through: omega(ArHCl)=%.3e Ha, L=%.3e Bohr",
                  omega_arhcl, L2);
    detail += buf;
  }

  // (b) Shipped synthetic curves reproduce the qualitative shapes.
  {
    const auto& s = arhcl.scan.samples;
    const double gamma0 = s.front().gamma;
    const double gamma_end = s.back().gamma;
    bool monotone = true;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i].gamma < s[i - 1].gamma * (1.0 - 1e-9)) monotone = false;
    const double mid = s[s.size() / 2].gamma;
    if (!(monotone && gamma_end > 2.0 * gamma0 && mid > 0.9 * gamma_end)) pass = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "; ArHCl-like rise x%.1f, mid/end %.3f",
                  gamma_end / gamma0, mid / gamma_end);
    detail += buf;
  }
  {
    const auto& s = odd.scan.samples;
    const double gamma0 = s.front().gamma;
    const double gamma_end = s.back().gamma;
    const double rise = gamma_end - gamma0;
    // Half of the total enhancement must arrive within the first quarter of
    // the coupling range: steep weak-coupling enhancement.
    std::size_t half_at = s.size();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i].gamma >= gamma0 + 0.5 * rise) {
        half_at = i;
        break;
      }
    const double frac = s[half_at].epsilon / s.back().epsilon;
    if (!(gamma_end > 2.0 * gamma0 && frac <= 0.25)) pass = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "; O+D2-like rise x%.1f, half-rise at %.0f%% of range",
                  gamma_end / gamma0, 100.0 * frac);
    detail += buf;
  }

  pass = pass && t.seconds() < 120.0;
  report(10, "paper numbers flow through; curve shapes reproduced", pass, detail,
         t.seconds());
}

void criterion_11_no_enhancement() {
  Timer t;
  bool pass = false;
  std::string detail = "no exception";
  try {
    const ScenarioConfig config = load_scenario(scenario_path("eckart_bare.json"));
    PipelineOptions options;
    options.quiet = true;
    options.output_override =
        std::filesystem::temp_directory_path() / "darkcavity_acceptance_symmetric";
    run_scan(config, options);
  } catch (const NoEmissionChannel& e) {
    pass = true;
    detail = "NoEmissionChannel raised (exit 3 at the CLI)";
  } catch (const std::exception& e) {
    detail = std::string("unexpected: ") + e.what();
  }
  pass = pass && t.seconds() < 30.0;
  report(11, "symmetric channel yields no emission channel", pass, detail, t.seconds());
}

}  // namespace

int main() {
  Timer total;
  std::printf("== darkcavity acceptance suite ==\n");

  criterion_2_closed_form();
  criterion_3_exceptional_point();
  criterion_4_saturation();
  criterion_7_eckart();
  criterion_5_scaling_machinery();
  criterion_9_hygiene();
  criterion_6_benchmark();

  try {
    const Pipeline arhcl = run_pipeline("arhcl_like.json");
    const Pipeline odd = run_pipeline("odd_like.json");
    criterion_1_uncoupled(arhcl, odd);
    criterion_10_paper_numbers(arhcl, odd);
  } catch (const std::exception& e) {
    std::printf("FAIL criterion  1: scenario pipeline (%s)\n", e.what());
    std::printf("FAIL criterion 10: scenario pipeline (%s)\n", e.what());
    failures += 2;
  }

  criterion_11_no_enhancement();
  criterion_8_oracle2d();

  std::printf("== %s: %d failure(s), %.1f s total ==\n",
              failures == 0 ? "ALL CRITERIA PASS" : "FAILURES", failures,
              total.seconds());
  return failures == 0 ? 0 : 1;
}
