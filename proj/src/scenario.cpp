#include "darkcavity/scenario.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "darkcavity/csvio.hpp"
#include "darkcavity/errors.hpp"

namespace darkcavity {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& message) {
  throw DomainError("config: " + path + ": " + message);
}

const json& require_key(const json& node, const std::string& key, const std::string& path) {
  if (!node.is_object()) config_error(path, "expected an object");
  const auto it = node.find(key);
  if (it == node.end()) config_error(path + "." + key, "missing required key");
  return *it;
}

double as_number(const json& node, const std::string& path) {
  if (!node.is_number()) config_error(path, "expected a number");
  return node.get<double>();
}

int as_int(const json& node, const std::string& path) {
  if (!node.is_number_integer()) config_error(path, "expected an integer");
  return node.get<int>();
}

std::string as_string(const json& node, const std::string& path) {
  if (!node.is_string()) config_error(path, "expected a string");
  return node.get<std::string>();
}

double number_or(const json& node, const std::string& key, double fallback,
                 const std::string& path) {
  if (!node.is_object()) config_error(path, "expected an object");
  const auto it = node.find(key);
  return it == node.end() ? fallback : as_number(*it, path + "." + key);
}

int int_or(const json& node, const std::string& key, int fallback,
           const std::string& path) {
  if (!node.is_object()) config_error(path, "expected an object");
  const auto it = node.find(key);
  return it == node.end() ? fallback : as_int(*it, path + "." + key);
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : data) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string hash_string(const std::string& data) {
  std::ostringstream out;
  out << "fnv1a:" << std::hex << fnv1a(data);
  return out.str();
}

StaticBarrier parse_static_barrier(const json& node, const std::string& path) {
  const std::string form = as_string(require_key(node, "form", path), path + ".form");
  StaticBarrier barrier;
  barrier.offset = number_or(node, "offset", 0.0, path);
  if (form == "zero") {
    barrier.form = ZeroBarrier{};
  } else if (form == "eckart") {
    EckartParams p;  // defaults: the O+D2 static barrier
    p.amplitude = number_or(node, "amplitude", p.amplitude, path);
    p.shift = number_or(node, "shift", p.shift, path);
    p.steepness = number_or(node, "steepness", p.steepness, path);
    p.center = number_or(node, "center", 0.0, path);
    const double auto_offset =
        p.amplitude * std::exp(2.0 * p.steepness * p.shift);
    p.asymmetry_offset = number_or(node, "asymmetry_offset", auto_offset, path);
    if (!(p.amplitude > 0.0)) config_error(path + ".amplitude", "must be positive");
    barrier.form = p;
  } else if (form == "quadratic") {
    QuadraticBarrier p;
    p.force_constant = number_or(node, "force_constant", 1.0, path);
    barrier.form = p;
  } else if (form == "gaussian_damped_quadratic") {
    GaussianDampedQuadratic p;
    p.force_constant = number_or(node, "force_constant", 1.0, path);
    p.damping = number_or(node, "damping", 0.1, path);
    barrier.form = p;
  } else {
    config_error(path + ".form", "unknown form '" + form + "'");
  }
  return barrier;
}

FrequencyProfile parse_frequency(const json& node, const std::string& path,
                                 const std::filesystem::path& base_dir);

FrequencyProfile parse_frequency_impl(const json& node, const std::string& path,
                                      const std::filesystem::path& base_dir) {
  const std::string variant =
      as_string(require_key(node, "variant", path), path + ".variant");
  if (variant == "constant") {
    ConstantProfile p;
    p.omega0 = as_number(require_key(node, "omega0", path), path + ".omega0");
    return FrequencyProfile{p};
  }
  if (variant == "tanh_step") {
    TanhStepProfile p;
    p.omega_left = as_number(require_key(node, "omega_left", path), path + ".omega_left");
    p.omega_right =
        as_number(require_key(node, "omega_right", path), path + ".omega_right");
    p.steepness = number_or(node, "steepness", 1.0, path);
    p.center = number_or(node, "center", 0.0, path);
    return FrequencyProfile{p};
  }
  if (variant == "gaussian_well") {
    GaussianWellProfile p;
    p.omega_inf = as_number(require_key(node, "omega_inf", path), path + ".omega_inf");
    p.depth = as_number(require_key(node, "depth", path), path + ".depth");
    p.width = number_or(node, "width", 1.0, path);
    p.center = number_or(node, "center", 0.0, path);
    if (!(p.width > 0.0)) config_error(path + ".width", "must be positive");
    return FrequencyProfile{p};
  }
  if (variant == "fitted_tabulated") {
    const std::string rel =
        as_string(require_key(node, "table_path", path), path + ".table_path");
    std::filesystem::path table = rel;
    if (table.is_relative()) table = base_dir / table;
    TabulatedCurve curve = read_tabulated_csv(table);
    // Reference-shifted tables (frequency plotted against a reactant
    // reference) are made absolute at ingestion.
    const double reference = number_or(node, "reference_frequency", 0.0, path);
    for (auto& s : curve.samples) s.value += reference;
    FitOptions fit_options;
    fit_options.residual_tolerance =
        number_or(node, "residual_tolerance", fit_options.residual_tolerance, path);
    const int n_terms = int_or(node, "n_terms", 3, path);
    return fit_tabulated(curve, FitBasis::TanhPlusGaussians, n_terms, fit_options);
  }
  if (variant == "sum") {
    const json& parts = require_key(node, "parts", path);
    if (!parts.is_array() || parts.empty())
      config_error(path + ".parts", "expected a non-empty array");
    SumProfile sum;
    int index = 0;
    for (const auto& part : parts)
      sum.parts.push_back(
          parse_frequency(part, path + ".parts[" + std::to_string(index++) + "]",
                          base_dir));
    return FrequencyProfile{sum};
  }
  config_error(path + ".variant", "unknown variant '" + variant + "'");
}

FrequencyProfile parse_frequency(const json& node, const std::string& path,
                                 const std::filesystem::path& base_dir) {
  return parse_frequency_impl(node, path, base_dir);
}

Grid parse_grid(const json& node, const std::string& path) {
  const double x_min = as_number(require_key(node, "x_min", path), path + ".x_min");
  const double x_max = as_number(require_key(node, "x_max", path), path + ".x_max");
  const int n_points = as_int(require_key(node, "n_points", path), path + ".n_points");
  try {
    return make_grid(x_min, x_max, n_points);
  } catch (const DomainError& e) {
    config_error(path, e.what());
  }
}

ScenarioConfig parse_scenario_json(const json& root, const std::string& origin,
                                   const std::filesystem::path& base_dir) {
  ScenarioConfig config;
  config.name = as_string(require_key(root, "name", origin), origin + ".name");

  const json& channel = require_key(root, "channel", origin);
  const std::string cpath = origin + ".channel";
  config.channel.reduced_mass =
      as_number(require_key(channel, "reduced_mass", cpath), cpath + ".reduced_mass");
  config.channel.n_perp = int_or(channel, "n_perp", 0, cpath);
  config.channel.static_barrier = parse_static_barrier(
      require_key(channel, "static_barrier", cpath), cpath + ".static_barrier");
  config.channel.frequency = parse_frequency(require_key(channel, "frequency", cpath),
                                             cpath + ".frequency", base_dir);
  try {
    config.channel = validate_channel(config.channel);
  } catch (const DomainError& e) {
    config_error(cpath, e.what());
  }

  config.grid = parse_grid(require_key(root, "grid", origin), origin + ".grid");

  const json& scaling = require_key(root, "scaling", origin);
  const std::string spath = origin + ".scaling";
  config.theta_center =
      as_number(require_key(scaling, "theta_center", spath), spath + ".theta_center");
  config.theta_span = number_or(scaling, "theta_span", 0.2, spath);
  config.n_theta = int_or(scaling, "n_theta", 5, spath);
  if (!(config.theta_center > 0.0))
    config_error(spath + ".theta_center", "must be positive");
  if (!(config.theta_span > 0.0)) config_error(spath + ".theta_span", "must be positive");
  if (config.n_theta < 3) config_error(spath + ".n_theta", "must be >= 3");

  if (root.contains("solver")) {
    const json& solver = root["solver"];
    const std::string opath = origin + ".solver";
    config.solver.stability_threshold_per_rad =
        number_or(solver, "stability_threshold_per_rad",
                  config.solver.stability_threshold_per_rad, opath);
    config.solver.width_floor =
        number_or(solver, "width_floor", config.solver.width_floor, opath);
    config.solver.width_ceiling =
        number_or(solver, "width_ceiling", config.solver.width_ceiling, opath);
    config.solver.keep_longest =
        int_or(solver, "keep_longest", config.solver.keep_longest, opath);
    config.solver.participation_fraction = number_or(
        solver, "participation_fraction", config.solver.participation_fraction, opath);
    config.solver.eigensolve.dimension_cap = int_or(
        solver, "dimension_cap", config.solver.eigensolve.dimension_cap, opath);
    config.classify.match_radius_fraction = number_or(
        solver, "match_radius_fraction", config.classify.match_radius_fraction, opath);
    config.classify.match_radius_min =
        number_or(solver, "match_radius_min", config.classify.match_radius_min, opath);
    config.classify.barrier_window_margin = number_or(
        solver, "barrier_window_margin", config.classify.barrier_window_margin, opath);
  }
  config.classify.resonance = config.solver;

  if (root.contains("cavity")) {
    const json& cavity = root["cavity"];
    const std::string vpath = origin + ".cavity";
    config.cavity.mirror_area = number_or(cavity, "mirror_area", 1.0, vpath);
    config.cavity.n_molecules = int_or(cavity, "n_molecules", 1, vpath);
    if (!(config.cavity.mirror_area > 0.0))
      config_error(vpath + ".mirror_area", "must be positive");
    if (config.cavity.n_molecules < 1)
      config_error(vpath + ".n_molecules", "must be >= 1");
    if (cavity.contains("epsilon")) {
      const json& eps = cavity["epsilon"];
      const std::string epath = vpath + ".epsilon";
      const std::string mode = as_string(require_key(eps, "mode", epath), epath + ".mode");
      if (mode == "list") {
        const json& values = require_key(eps, "values", epath);
        if (!values.is_array() || values.empty())
          config_error(epath + ".values", "expected a non-empty array");
        config.cavity.epsilon.mode = EpsilonSpec::Mode::List;
        for (const auto& v : values)
          config.cavity.epsilon.values.push_back(as_number(v, epath + ".values[]"));
      } else if (mode == "linspace") {
        config.cavity.epsilon.mode = EpsilonSpec::Mode::Linspace;
        config.cavity.epsilon.max =
            as_number(require_key(eps, "max", epath), epath + ".max");
        config.cavity.epsilon.count = int_or(eps, "count", 61, epath);
        if (!(config.cavity.epsilon.max > 0.0))
          config_error(epath + ".max", "must be positive");
      } else if (mode == "geometry") {
        config.cavity.epsilon.mode = EpsilonSpec::Mode::Geometry;
        config.cavity.epsilon.scale_max = number_or(eps, "scale_max", 3.0, epath);
        config.cavity.epsilon.count = int_or(eps, "count", 61, epath);
      } else {
        config_error(epath + ".mode", "unknown mode '" + mode + "'");
      }
      if (config.cavity.epsilon.count < 2 &&
          config.cavity.epsilon.mode != EpsilonSpec::Mode::List)
        config_error(epath + ".count", "must be >= 2");
    }
  }

  if (root.contains("selection")) {
    const json& selection = root["selection"];
    const std::string lpath = origin + ".selection";
    if (selection.contains("db_by_nodes"))
      config.selection.db_by_nodes = as_int(selection["db_by_nodes"], lpath + ".db_by_nodes");
    if (selection.contains("db_by_index"))
      config.selection.db_by_index = as_int(selection["db_by_index"], lpath + ".db_by_index");
    if (config.selection.db_by_nodes && config.selection.db_by_index)
      config_error(lpath, "db_by_nodes and db_by_index are mutually exclusive");
  }

  if (root.contains("oracle2d")) {
    const json& oracle = root["oracle2d"];
    const std::string opath = origin + ".oracle2d";
    config.oracle2d.n_y_basis = int_or(oracle, "n_y_basis", 8, opath);
    if (config.oracle2d.n_y_basis < 2)
      config_error(opath + ".n_y_basis", "must be >= 2");
    if (oracle.contains("y_reference_frequency"))
      config.oracle2d.y_reference_frequency =
          as_number(oracle["y_reference_frequency"], opath + ".y_reference_frequency");
    if (oracle.contains("x_grid"))
      config.oracle2d.x_grid = parse_grid(oracle["x_grid"], opath + ".x_grid");
    config.oracle2d.dimension_cap =
        int_or(oracle, "dimension_cap", config.oracle2d.dimension_cap, opath);
  }

  if (root.contains("output")) {
    config.output_directory = as_string(
        require_key(root["output"], "directory", origin + ".output"),
        origin + ".output.directory");
  }
  return config;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const std::string& config_hash, std::vector<std::string> files) {
  json manifest;
  manifest["toolkit_version"] = kToolkitVersion;
  manifest["command"] = command;
  manifest["config_hash"] = config_hash;
  manifest["created_utc"] = utc_timestamp();
  manifest["files"] = files;
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

std::filesystem::path resolve_out_dir(const ScenarioConfig& config,
                                      const PipelineOptions& options) {
  const std::filesystem::path dir =
      options.output_override ? *options.output_override
                              : std::filesystem::path(config.output_directory);
  std::filesystem::create_directories(dir);
  return dir;
}

PoleSet classified_poles(const ScenarioConfig& config, const PipelineOptions& options,
                         bool require_ts) {
  const double theta =
      options.theta_override ? *options.theta_override : config.theta_center;
  PoleSet poles = find_resonances(config.channel, config.grid, theta, config.theta_span,
                                  config.n_theta, config.solver);
  ClassifyOptions classify = config.classify;
  classify.require_transition_state = require_ts;
  return classify_poles(std::move(poles), config.channel, classify);
}

const ResonancePole* find_ts(const PoleSet& poles) {
  for (const auto& pole : poles.poles)
    if (pole.classification == PoleClass::TS) return &pole;
  return nullptr;
}

const ResonancePole& select_db(const PoleSet& poles, const ResonancePole& ts,
                               const SelectionSpec& selection) {
  if (selection.db_by_index) {
    const int index = *selection.db_by_index;
    if (index < 0 || index >= static_cast<int>(poles.poles.size()))
      throw DomainError("selection.db_by_index out of range");
    const ResonancePole& pole = poles.poles[index];
    if (pole.classification != PoleClass::DB)
      throw DomainError("selection.db_by_index: pole " + std::to_string(index) +
                        " is " + to_string(pole.classification) + ", not DB");
    return pole;
  }
  if (selection.db_by_nodes) {
    for (const auto& pole : poles.poles)
      if (pole.classification == PoleClass::DB && pole.node_count == *selection.db_by_nodes)
        return pole;
    throw NoEmissionChannel("selection: no DB pole with " +
                            std::to_string(*selection.db_by_nodes) + " nodes");
  }
  // Default: the DB pole nearest below the TS (single-photon emission).
  const ResonancePole* best = nullptr;
  for (const auto& pole : poles.poles) {
    if (pole.classification != PoleClass::DB || !(pole.energy < ts.energy)) continue;
    if (!best || ts.energy - pole.energy < ts.energy - best->energy) best = &pole;
  }
  if (!best)
    throw NoEmissionChannel(
        "selection: no DB pole below the TS; the cavity has no emission channel "
        "and cannot change the rate");
  return *best;
}

std::vector<double> epsilon_list(const CavitySpec& cavity, double omega_cav,
                                 double mirror_distance_value) {
  std::vector<double> eps;
  switch (cavity.epsilon.mode) {
    case EpsilonSpec::Mode::List:
      eps = cavity.epsilon.values;
      break;
    case EpsilonSpec::Mode::Linspace: {
      const int n = cavity.epsilon.count;
      for (int i = 0; i < n; ++i) eps.push_back(cavity.epsilon.max * i / (n - 1));
      break;
    }
    case EpsilonSpec::Mode::Geometry: {
      const double eps_geom = epsilon_from_geometry(
          omega_cav, mirror_distance_value, cavity.mirror_area, cavity.n_molecules);
      const int n = cavity.epsilon.count;
      for (int i = 0; i < n; ++i)
        eps.push_back(cavity.epsilon.scale_max * eps_geom * i / (n - 1));
      break;
    }
  }
  return eps;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError("config: " + origin + ": JSON parse error: " + e.what());
  }
  ScenarioConfig config = parse_scenario_json(root, origin, ".");
  config.config_hash = hash_string(json_text);
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json root;
  try {
    root = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw DomainError("config: " + path.string() + ": JSON parse error: " + e.what());
  }
  ScenarioConfig config =
      parse_scenario_json(root, path.filename().string(), path.parent_path());
  config.config_hash = hash_string(buffer.str());
  return config;
}

RunResult run_poles(const ScenarioConfig& config, const PipelineOptions& options) {
  const auto out_dir = resolve_out_dir(config, options);
  const PoleSet poles = classified_poles(config, options, /*require_ts=*/false);

  RunResult result;
  result.output_directory = out_dir;
  write_text_file(out_dir / "poles.csv", pole_set_csv(poles));
  result.files.push_back("poles.csv");
  for (std::size_t i = 0; i < poles.poles.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "psi_%03zu.csv", i);
    write_text_file(out_dir / name, wavefunction_csv(poles.poles[i], poles.grid));
    result.files.push_back(name);
  }
  write_manifest(out_dir, "poles", config.config_hash, result.files);
  result.files.push_back("manifest.json");
  if (!options.quiet)
    std::cerr << "poles: " << poles.poles.size() << " stable pole(s) -> "
              << out_dir.string() << "\n";
  return result;
}

RunResult run_scan(const ScenarioConfig& config, const PipelineOptions& options) {
  const auto out_dir = resolve_out_dir(config, options);

  PoleSet poles;
  try {
    poles = classified_poles(config, options, /*require_ts=*/true);
  } catch (const NoTransitionState& e) {
    // No physical TS/DB structure survives; there is no emission channel for
    // the cavity to couple, hence no rate change to scan.
    throw NoEmissionChannel(std::string(e.what()) +
                            " (adiabatic and static potentials support the same "
                            "poles; no cavity enhancement)");
  }
  const ResonancePole* ts = find_ts(poles);
  const ResonancePole& db = select_db(poles, *ts, config.selection);

  const double omega = cavity_frequency(*ts, db);
  const Complex dipole = transition_dipole(*ts, db, config.channel, poles.grid);
  PolaritonSetup setup = make_polariton_setup(*ts, db, dipole, 0.0,
                                              config.cavity.mirror_area,
                                              config.cavity.n_molecules);
  const std::vector<double> eps =
      epsilon_list(config.cavity, omega, setup.mirror_distance);
  const RateScan scan = scan_rate(setup, eps);

  RunResult result;
  result.output_directory = out_dir;
  write_text_file(out_dir / "scan.csv", rate_scan_csv(scan));
  result.files.push_back("scan.csv");
  write_text_file(out_dir / "scan.gp", rate_scan_plot_script("scan.csv", scan));
  result.files.push_back("scan.gp");
  write_text_file(out_dir / "poles.csv", pole_set_csv(poles));
  result.files.push_back("poles.csv");
  write_manifest(out_dir, "scan", config.config_hash, result.files);
  result.files.push_back("manifest.json");
  if (!options.quiet)
    std::cerr << "scan: omega_cav=" << omega << " Ha, " << scan.samples.size()
              << " sample(s) -> " << out_dir.string() << "\n";
  return result;
}

RunResult run_oracle2d(const ScenarioConfig& config, const PipelineOptions& options) {
  const auto out_dir = resolve_out_dir(config, options);
  const double theta =
      options.theta_override ? *options.theta_override : config.theta_center;

  const PoleSet poles_1d = find_resonances(config.channel, config.grid, theta,
                                           config.theta_span, config.n_theta,
                                           config.solver);

  RphSurface surface;
  surface.static_barrier = config.channel.static_barrier;
  surface.frequency = config.channel.frequency;
  surface.reduced_mass = config.channel.reduced_mass;

  const Grid x_grid = config.oracle2d.x_grid ? *config.oracle2d.x_grid : config.grid;
  double omega_ref;
  if (config.oracle2d.y_reference_frequency) {
    omega_ref = *config.oracle2d.y_reference_frequency;
  } else {
    // Omega at the real-axis barrier top of the adiabatic channel.
    double top = -std::numeric_limits<double>::infinity();
    double top_x = x_grid.x_min;
    for (int k = 0; k < x_grid.n_points; ++k) {
      const double v =
          eval_adiabatic(config.channel, Complex(x_grid.point(k), 0.0)).real();
      if (v > top) {
        top = v;
        top_x = x_grid.point(k);
      }
    }
    omega_ref = eval_frequency(config.channel.frequency, Complex(top_x, 0.0)).real();
  }

  Feshbach2dOptions f2d;
  f2d.dimension_cap = config.oracle2d.dimension_cap;
  f2d.resonance = config.solver;
  const ProductBasisSpec basis =
      make_product_basis(x_grid, config.oracle2d.n_y_basis, omega_ref);
  const PoleSet poles_2d =
      solve_2d_resonances(surface, basis, theta, config.theta_span, config.n_theta, f2d);

  const AgreementReport report = compare_adiabatic(poles_2d, poles_1d);

  RunResult result;
  result.output_directory = out_dir;
  write_text_file(out_dir / "agreement.csv", agreement_csv(report));
  result.files.push_back("agreement.csv");
  write_text_file(out_dir / "poles_1d.csv", pole_set_csv(poles_1d));
  result.files.push_back("poles_1d.csv");
  write_text_file(out_dir / "poles_2d.csv", pole_set_csv(poles_2d));
  result.files.push_back("poles_2d.csv");
  write_manifest(out_dir, "oracle2d", config.config_hash, result.files);
  result.files.push_back("manifest.json");
  if (!options.quiet)
    std::cerr << "oracle2d: " << report.pairs.size() << " matched pair(s), max relE="
              << report.max_rel_position << " -> " << out_dir.string() << "\n";
  return result;
}

RunResult run_fit(const std::filesystem::path& table_path, int n_terms,
                  const FitOptions& fit_options, const std::filesystem::path& out_dir,
                  bool quiet) {
  std::ifstream in(table_path);
  if (!in) throw DomainError("fit: cannot open " + table_path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  in.close();

  TabulatedCurve curve;
  try {
    curve = read_tabulated_csv(table_path);
  } catch (const IoError& e) {
    throw DomainError(e.what());
  }
  const FrequencyProfile profile =
      fit_tabulated(curve, FitBasis::TanhPlusGaussians, n_terms, fit_options);
  const auto& fitted = std::get<FittedProfile>(profile.model);

  json out;
  out["basis"] = "tanh_plus_gaussians";
  out["c0"] = fitted.c0;
  out["c1"] = fitted.c1;
  out["steepness"] = fitted.steepness;
  out["center"] = fitted.center;
  out["gaussians"] = json::array();
  for (const auto& g : fitted.gaussians)
    out["gaussians"].push_back(
        {{"amplitude", g.amplitude}, {"decay", g.decay}, {"center", g.center}});
  out["max_residual"] = fitted.max_residual;
  out["n_samples"] = curve.samples.size();
  out["residual_tolerance"] = fit_options.residual_tolerance;

  std::filesystem::create_directories(out_dir);
  RunResult result;
  result.output_directory = out_dir;
  write_text_file(out_dir / "fit.json", out.dump(2) + "\n");
  result.files.push_back("fit.json");
  write_manifest(out_dir, "fit", hash_string(buffer.str()), result.files);
  result.files.push_back("manifest.json");
  if (!quiet)
    std::cerr << "fit: max residual " << fitted.max_residual << " -> "
              << out_dir.string() << "\n";
  return result;
}

}  // namespace darkcavity
