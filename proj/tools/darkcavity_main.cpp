// darkcavity: complex-scaling resonance poles and dark-cavity rate scans.
//
// Subcommands: poles, scan, oracle2d, fit. Exit codes: 0 success, 2 config
// error, 3 no stable poles / no emission channel, 4 dimension cap, 5 fit
// divergence, 1 anything else.

#include <CLI11.hpp>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "darkcavity/errors.hpp"
#include "darkcavity/scenario.hpp"

extern "C" void openblas_set_num_threads(int);

namespace {

void apply_thread_cap() {
  if (const char* env = std::getenv("DARKCAVITY_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) openblas_set_num_threads(n);
  }
}

int run_guarded(bool quiet, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const darkcavity::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const darkcavity::NoStablePoles& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const darkcavity::NoEmissionChannel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const darkcavity::NoTransitionState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const darkcavity::DimensionCap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const darkcavity::FitDiverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"Complex-scaled reaction-path resonances and dark-cavity rate scans"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  double theta_override = -1.0;
  bool quiet = false;

  const auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", config_path, "Scenario config (JSON)")->required();
    cmd->add_option("--out", out_dir, "Output directory (overrides the config)");
    cmd->add_option("--theta-override", theta_override,
                    "Central complex-scaling angle in radians");
    cmd->add_flag("--quiet", quiet, "Suppress progress output");
  };

  CLI::App* poles = app.add_subcommand("poles", "Compute and classify complex poles");
  add_common(poles, true);

  CLI::App* scan = app.add_subcommand("scan", "Rate vs cavity coupling strength");
  add_common(scan, true);

  CLI::App* oracle =
      app.add_subcommand("oracle2d", "2D Feshbach check of the adiabatic 1D poles");
  add_common(oracle, true);

  CLI::App* fit = app.add_subcommand("fit", "Fit a tabulated curve to a continuable form");
  std::string table_path;
  int n_terms = 3;
  double residual_tolerance = 1.0e-3;
  fit->add_option("table", table_path, "Two-column CSV (x_bohr,value_hartree)")
      ->required();
  fit->add_option("--terms", n_terms, "Number of Gaussian terms");
  fit->add_option("--tolerance", residual_tolerance, "Max residual before FitDiverged");
  add_common(fit, false);

  CLI11_PARSE(app, argc, argv);

  darkcavity::PipelineOptions options;
  options.quiet = quiet;
  if (theta_override > 0.0) options.theta_override = theta_override;
  if (!out_dir.empty()) options.output_override = out_dir;

  return run_guarded(quiet, [&] {
    if (poles->parsed()) {
      darkcavity::run_poles(darkcavity::load_scenario(config_path), options);
    } else if (scan->parsed()) {
      darkcavity::run_scan(darkcavity::load_scenario(config_path), options);
    } else if (oracle->parsed()) {
      darkcavity::run_oracle2d(darkcavity::load_scenario(config_path), options);
    } else if (fit->parsed()) {
      darkcavity::FitOptions fit_options;
      fit_options.residual_tolerance = residual_tolerance;
      darkcavity::run_fit(table_path, n_terms, fit_options,
                          out_dir.empty() ? "out" : out_dir, quiet);
    }
  });
}
