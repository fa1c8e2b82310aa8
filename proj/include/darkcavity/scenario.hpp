#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "darkcavity/feshbach2d.hpp"
#include "darkcavity/polariton.hpp"
#include "darkcavity/potentials.hpp"
#include "darkcavity/resonance.hpp"

namespace darkcavity {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Epsilon sampling for rate scans: an explicit list, a linear ramp, or a ramp
// scaled to the cavity-geometry coupling strength.
struct EpsilonSpec {
  enum class Mode { List, Linspace, Geometry } mode = Mode::Linspace;
  std::vector<double> values;  // List
  double max = 0.0;            // Linspace
  double scale_max = 3.0;      // Geometry: scan [0, scale_max * eps_geom]
  int count = 61;
};

struct CavitySpec {
  double mirror_area = 1.0;  // Bohr^2
  int n_molecules = 1;
  EpsilonSpec epsilon;
};

struct SelectionSpec {
  std::optional<int> db_by_nodes;
  std::optional<int> db_by_index;  // row in the width-sorted pole table
};

struct Oracle2dSpec {
  std::optional<Grid> x_grid;  // defaults to the scenario grid
  int n_y_basis = 8;
  // Defaults to Omega at the real-axis barrier top.
  std::optional<double> y_reference_frequency;
  int dimension_cap = 20000;
};

struct ScenarioConfig {
  std::string name;
  AdiabaticChannel channel;
  Grid grid;
  double theta_center = 0.75;
  double theta_span = 0.2;
  int n_theta = 5;
  ResonanceOptions solver;
  ClassifyOptions classify;
  CavitySpec cavity;
  SelectionSpec selection;
  Oracle2dSpec oracle2d;
  std::string output_directory = "out";
  std::string config_hash;  // filled by the loader
};

// Parses and validates a scenario file; DomainError messages carry the
// offending key path.
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const std::string& json_text, const std::string& origin);

struct PipelineOptions {
  std::optional<double> theta_override;
  std::optional<std::filesystem::path> output_override;
  bool quiet = false;
};

struct RunResult {
  std::filesystem::path output_directory;
  std::vector<std::string> files;  // relative to output_directory
};

// poles -> classify -> CSV + per-pole wavefunction samples + manifest.
RunResult run_poles(const ScenarioConfig& config, const PipelineOptions& options = {});

// poles -> classify -> DB selection -> dipole -> cavity -> rate scan files.
RunResult run_scan(const ScenarioConfig& config, const PipelineOptions& options = {});

// 1D adiabatic poles vs 2D Feshbach poles -> agreement CSV.
RunResult run_oracle2d(const ScenarioConfig& config, const PipelineOptions& options = {});

// Table -> tanh-plus-Gaussians fit -> fitted-profile JSON + residual report.
RunResult run_fit(const std::filesystem::path& table_path, int n_terms,
                  const FitOptions& fit_options, const std::filesystem::path& out_dir,
                  bool quiet = false);

}  // namespace darkcavity
