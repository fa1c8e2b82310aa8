#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "darkcavity/errors.hpp"
#include "darkcavity/potentials.hpp"

namespace darkcavity {

namespace {

// Variable projection: the linear coefficients (c0, c1, g_i) are solved
// exactly by least squares for every choice of the nonlinear parameters
// q = [log a, x0, (log b_i, xc_i) x n], and only q is optimized. Logs keep
// the tanh steepness and the Gaussian decays positive.
struct VarProModel {
  int n_gauss = 0;

  int q_size() const { return 2 + 2 * n_gauss; }
  int beta_size() const { return 2 + n_gauss; }

  Eigen::MatrixXd design(const Eigen::VectorXd& q,
                         const std::vector<TabulatedCurve::Sample>& s) const {
    const int m = static_cast<int>(s.size());
    Eigen::MatrixXd phi(m, beta_size());
    const double a = std::exp(q[0]);
    for (int k = 0; k < m; ++k) {
      phi(k, 0) = 1.0;
      phi(k, 1) = std::tanh(a * (s[k].x - q[1]));
      for (int i = 0; i < n_gauss; ++i) {
        const double b = std::exp(q[2 + 2 * i]);
        const double u = s[k].x - q[3 + 2 * i];
        phi(k, 2 + i) = std::exp(-b * u * u);
      }
    }
    return phi;
  }

  // Projected residual r(q) = Phi beta(q) - y with beta from ridge-stabilized
  // least squares. The tiny ridge suppresses near-collinear Gaussian pairs
  // with huge cancelling amplitudes, which would blow up off the real axis.
  Eigen::VectorXd residual(const Eigen::VectorXd& q,
                           const std::vector<TabulatedCurve::Sample>& s,
                           const Eigen::VectorXd& y, Eigen::VectorXd* beta_out) const {
    const Eigen::MatrixXd phi = design(q, s);
    Eigen::MatrixXd normal = phi.transpose() * phi;
    normal.diagonal().array() += 1.0e-10 * normal.diagonal().maxCoeff();
    const Eigen::VectorXd beta = normal.ldlt().solve(phi.transpose() * y);
    if (beta_out) *beta_out = beta;
    return phi * beta - y;
  }
};

// Levenberg-Marquardt on the projected residual with a forward-difference
// Jacobian; gain-ratio damping control.
Eigen::VectorXd levenberg_marquardt(const VarProModel& model, Eigen::VectorXd q,
                                    const std::vector<TabulatedCurve::Sample>& s,
                                    const Eigen::VectorXd& y, int max_iterations) {
  const int m = static_cast<int>(s.size());
  const int n = model.q_size();
  Eigen::MatrixXd jac(m, n);

  Eigen::VectorXd r = model.residual(q, s, y, nullptr);
  double cost = 0.5 * r.squaredNorm();
  double lambda = -1.0;
  double nu = 2.0;

  for (int iter = 0; iter < max_iterations; ++iter) {
    for (int j = 0; j < n; ++j) {
      const double h = 1.0e-7 * (1.0 + std::abs(q[j]));
      Eigen::VectorXd qh = q;
      qh[j] += h;
      jac.col(j) = (model.residual(qh, s, y, nullptr) - r) / h;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    if (lambda < 0.0) lambda = 1.0e-3 * std::max(jtj.diagonal().maxCoeff(), 1.0e-12);
    if (g.lpNorm<Eigen::Infinity>() < 1.0e-16 * (1.0 + cost)) break;

    bool accepted = false;
    for (int tries = 0; tries < 45 && !accepted; ++tries) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda;
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= nu;
        nu *= 2.0;
        continue;
      }
      const Eigen::VectorXd trial = q + step;
      const Eigen::VectorXd rt = model.residual(trial, s, y, nullptr);
      const double trial_cost = 0.5 * rt.squaredNorm();
      const double predicted = 0.5 * step.dot(lambda * step - g);
      const double rho = predicted > 0.0 ? (cost - trial_cost) / predicted : -1.0;
      if (trial_cost < cost && rho > 0.0) {
        q = trial;
        r = rt;
        const bool tiny_step = step.norm() < 1.0e-14 * (1.0 + q.norm());
        cost = trial_cost;
        lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
        nu = 2.0;
        accepted = true;
        if (tiny_step) return q;
      } else {
        lambda *= nu;
        nu *= 2.0;
      }
    }
    if (!accepted) break;  // stalled; caller inspects the residual
  }
  return q;
}

}  // namespace

FrequencyProfile fit_tabulated(const TabulatedCurve& curve, FitBasis basis, int n_terms,
                               const FitOptions& options) {
  if (basis != FitBasis::TanhPlusGaussians)
    throw DomainError("fit_tabulated: unknown basis");
  if (n_terms < 1) throw DomainError("fit_tabulated: n_terms must be >= 1");
  if (curve.samples.size() < 8)
    throw DomainError("fit_tabulated: at least 8 samples required");

  const auto& s = curve.samples;
  const int m = static_cast<int>(s.size());
  const double span = s.back().x - s.front().x;
  Eigen::VectorXd y(m);
  for (int k = 0; k < m; ++k) y[k] = s[k].value;

  // Steepest-slope heuristic for the tanh seed.
  double x0 = 0.5 * (s.front().x + s.back().x);
  double slope_max = 0.0;
  for (int k = 1; k < m; ++k) {
    const double slope = (s[k].value - s[k - 1].value) / (s[k].x - s[k - 1].x);
    if (std::abs(slope) > std::abs(slope_max)) {
      slope_max = slope;
      x0 = 0.5 * (s[k].x + s[k - 1].x);
    }
  }
  const double c1_est = 0.5 * (s[m - 1].value + s[m - 2].value - s[0].value - s[1].value) / 2.0;
  double a = 2.0 / std::max(span, 1.0e-12);
  if (c1_est != 0.0) a = std::clamp(std::abs(slope_max / c1_est), 2.0 / span, 1.0e3);

  VarProModel tanh_only{0};
  Eigen::VectorXd q(2);
  q << std::log(a), x0;
  q = levenberg_marquardt(tanh_only, q, s, y, options.max_iterations);

  // Greedy Gaussian placement with several deterministic seeds per term; the
  // projected-residual landscape is smooth enough that the best seed wins.
  VarProModel model{0};
  for (int term = 0; term < n_terms; ++term) {
    const Eigen::VectorXd r = model.residual(q, s, y, nullptr);
    int peak = 0;
    for (int k = 1; k < m; ++k)
      if (std::abs(r[k]) > std::abs(r[peak])) peak = k;

    model.n_gauss = term + 1;
    Eigen::VectorXd best;
    double best_cost = std::numeric_limits<double>::infinity();
    const double y_scale = y.cwiseAbs().maxCoeff();
    for (const double center : {s[peak].x, q[1], 0.5 * (s[peak].x + q[1])}) {
      for (const double w :
           {span / 64.0, span / 32.0, span / 16.0, span / 8.0, span / 3.0}) {
        Eigen::VectorXd trial(q.size() + 2);
        trial.head(q.size()) = q;
        trial[q.size() + 0] = std::log(std::numbers::ln2 / (w * w));
        trial[q.size() + 1] = center;
        trial = levenberg_marquardt(model, trial, s, y, options.max_iterations);
        Eigen::VectorXd beta;
        const double cost = model.residual(trial, s, y, &beta).squaredNorm();
        // Reject runaway amplitudes; they cancel on the real axis only.
        if (beta.cwiseAbs().maxCoeff() > 50.0 * std::max(y_scale, 1.0e-12)) continue;
        if (cost < best_cost) {
          best_cost = cost;
          best = trial;
        }
      }
    }
    if (best.size() == 0) {
      // All seeds rejected; keep the previous parameters with a unit-width
      // Gaussian of zero weight at the residual peak.
      best.resize(q.size() + 2);
      best.head(q.size()) = q;
      best[q.size()] = 0.0;
      best[q.size() + 1] = s[peak].x;
    }
    q = best;
  }

  Eigen::VectorXd beta;
  model.residual(q, s, y, &beta);

  FittedProfile fitted;
  fitted.c0 = beta[0];
  fitted.c1 = beta[1];
  fitted.steepness = std::exp(q[0]);
  fitted.center = q[1];
  if (std::abs(fitted.c1) <= 1.0e-9 * y.cwiseAbs().maxCoeff()) fitted.c1 = 0.0;
  // Terms that contribute nothing on the real axis are dropped: under
  // analytic continuation exp(-b (x e^{i theta} - c)^2) grows like
  // exp(b x^2 sin^2 theta), so a numerically-zero amplitude times a moderate
  // decay is a bomb off the axis.
  const double prune = 1.0e-9 * y.cwiseAbs().maxCoeff();
  for (int i = 0; i < n_terms; ++i) {
    if (std::abs(beta[2 + i]) <= prune) continue;
    GaussianTerm term;
    term.amplitude = beta[2 + i];
    term.decay = std::exp(q[2 + 2 * i]);
    term.center = q[3 + 2 * i];
    fitted.gaussians.push_back(term);
  }
  // Residual of the pruned model is the honest figure.
  double max_residual = 0.0;
  const FrequencyProfile pruned{fitted};
  for (int k = 0; k < m; ++k)
    max_residual = std::max(
        max_residual,
        std::abs(eval_frequency(pruned, Complex(s[k].x, 0.0)).real() - s[k].value));
  if (max_residual > options.residual_tolerance)
    throw FitDiverged("fit_tabulated: max residual " + std::to_string(max_residual) +
                      " exceeds tolerance " + std::to_string(options.residual_tolerance));

  fitted.max_residual = max_residual;
  return FrequencyProfile{fitted};
}

}  // namespace darkcavity
