// dronecov command line: compute / simulate / sweep / optimize / validate.
//
// Exit codes: 0 success, 1 validation-suite failure, 2 input error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dronecov/dronecov.hpp"

namespace dc = dronecov;
using nlohmann::json;

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// ---------------------------------------------------------------------------
// shared option handling

struct CommonOptions {
  std::string config_path;
  std::string env_name;
  std::string env_file;
  std::string json_path;

  CLI::Option* opt_pt = nullptr;
  CLI::Option* opt_n0 = nullptr;
  CLI::Option* opt_lambda = nullptr;
  CLI::Option* opt_h = nullptr;
  CLI::Option* opt_phi_a = nullptr;
  CLI::Option* opt_t = nullptr;
  CLI::Option* opt_f = nullptr;
  double pt_db = 0, n0_db = 0, lambda = 0, h = 0, phi_a_deg = 0, t_db = 0, f = 0;

  CLI::Option* opt_rel = nullptr;
  CLI::Option* opt_abs = nullptr;
  CLI::Option* opt_maxsub = nullptr;
  CLI::Option* opt_ratio = nullptr;
  double rel_tol = 0, abs_tol = 0, inner_tol_ratio = 0;
  int max_subdivisions = 0;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "run configuration file (key = value lines)");
  cmd->add_option("--env", opts.env_name, "environment name (default: urban, or the config's env key)");
  cmd->add_option("--env-file", opts.env_file, "environment parameter file overriding the shipped sets");
  cmd->add_option("--json", opts.json_path, "write the run manifest and results as JSON");

  opts.opt_pt = cmd->add_option("--pt-db", opts.pt_db, "transmit power [dBW]");
  opts.opt_n0 = cmd->add_option("--n0-db", opts.n0_db, "noise power [dBW]");
  opts.opt_lambda = cmd->add_option("--lambda", opts.lambda, "drone density [1/m^2]");
  opts.opt_h = cmd->add_option("--h", opts.h, "drone altitude [m]");
  opts.opt_phi_a = cmd->add_option("--phi-a", opts.phi_a_deg, "full antenna beamwidth [deg]");
  opts.opt_t = cmd->add_option("--t-db", opts.t_db, "SINR threshold [dB]");
  opts.opt_f = cmd->add_option("--f", opts.f, "carrier frequency [Hz]");

  opts.opt_rel = cmd->add_option("--rel-tol", opts.rel_tol, "quadrature relative tolerance");
  opts.opt_abs = cmd->add_option("--abs-tol", opts.abs_tol, "quadrature absolute tolerance");
  opts.opt_maxsub = cmd->add_option("--max-subdivisions", opts.max_subdivisions,
                                    "quadrature subdivision budget");
  opts.opt_ratio = cmd->add_option("--inner-tol-ratio", opts.inner_tol_ratio,
                                   "inner/outer tolerance ratio for nested integrals");
}

struct ResolvedRun {
  dc::SystemConfig cfg;
  dc::QuadratureSpec quad;
  dc::EnvironmentParams env;
};

ResolvedRun resolve_run(const CommonOptions& opts) {
  ResolvedRun run;
  std::optional<std::string> env_from_config;
  if (!opts.config_path.empty()) {
    dc::ConfigFile file = dc::load_config_file(opts.config_path);
    run.cfg = file.cfg;
    run.quad = file.quad;
    env_from_config = file.env_name;
  }
  if (opts.opt_pt->count()) run.cfg.pt_db = opts.pt_db;
  if (opts.opt_n0->count()) run.cfg.n0_db = opts.n0_db;
  if (opts.opt_lambda->count()) run.cfg.lambda = opts.lambda;
  if (opts.opt_h->count()) run.cfg.h = opts.h;
  if (opts.opt_phi_a->count()) run.cfg.phi_a = dc::deg_to_rad(opts.phi_a_deg);
  if (opts.opt_t->count()) run.cfg.t_db = opts.t_db;
  if (opts.opt_f->count()) run.cfg.f = opts.f;
  if (opts.opt_rel->count()) run.quad.rel_tol = opts.rel_tol;
  if (opts.opt_abs->count()) run.quad.abs_tol = opts.abs_tol;
  if (opts.opt_maxsub->count()) run.quad.max_subdivisions = opts.max_subdivisions;
  if (opts.opt_ratio->count()) run.quad.inner_tol_ratio = opts.inner_tol_ratio;

  dc::validate(run.cfg);
  dc::validate(run.quad);

  std::string name = "urban";
  if (env_from_config) name = *env_from_config;
  if (!opts.env_name.empty()) name = opts.env_name;

  if (!opts.env_file.empty()) {
    const auto sets = dc::load_environment_file(opts.env_file);
    run.env = dc::find_environment(sets, name);
  } else {
    run.env = dc::find_environment(dc::builtin_environments(), name);
  }
  return run;
}

json cfg_to_json(const dc::SystemConfig& cfg) {
  return json{{"pt_db", cfg.pt_db},   {"n0_db", cfg.n0_db}, {"lambda", cfg.lambda},
              {"h", cfg.h},           {"phi_a_deg", dc::rad_to_deg(cfg.phi_a)},
              {"t_db", cfg.t_db},     {"f", cfg.f}};
}

json env_to_json(const dc::EnvironmentParams& env) {
  return json{{"a_los", env.a_los},           {"b_los", env.b_los},
              {"a_nlos", env.a_nlos},         {"b_nlos", env.b_nlos},
              {"mu_los_db", env.mu_los_db},   {"mu_nlos_db", env.mu_nlos_db},
              {"beta1", env.beta1},           {"beta2", env.beta2}};
}

json quad_to_json(const dc::QuadratureSpec& quad) {
  return json{{"rel_tol", quad.rel_tol},
              {"abs_tol", quad.abs_tol},
              {"max_subdivisions", quad.max_subdivisions},
              {"inner_tol_ratio", quad.inner_tol_ratio}};
}

json make_manifest(const std::string& command, const ResolvedRun& run,
                   std::optional<std::uint64_t> seed) {
  json manifest{{"command", command},
                {"cfg", cfg_to_json(run.cfg)},
                {"env", run.env.name},
                {"env_params", env_to_json(run.env)},
                {"quad", quad_to_json(run.quad)},
                {"version", dc::kVersion},
                {"timestamp", utc_timestamp()}};
  if (seed) {
    manifest["seed"] = *seed;
  } else {
    manifest["seed"] = nullptr;
  }
  return manifest;
}

void write_json(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw dc::ConfigError("cannot open output file '" + path + "'");
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// sweep grids

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return grid;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> grid(n);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < n; ++i) grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
  return grid;
}

std::vector<double> default_grid(dc::SweepParameter param) {
  switch (param) {
    case dc::SweepParameter::altitude: return logspace(100.0, 3000.0, 30);
    case dc::SweepParameter::density: return logspace(1e-7, 1e-4, 31);
    default: return linspace(10.0, 150.0, 29);  // degrees
  }
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  // lo:hi:n[:lin|log]
  std::vector<std::string> parts;
  std::string token;
  std::istringstream ss(spec);
  while (std::getline(ss, token, ':')) parts.push_back(token);
  if (parts.size() != 3 && parts.size() != 4) {
    throw dc::ConfigError("grid spec must be lo:hi:n or lo:hi:n:{lin|log}, got '" + spec + "'");
  }
  const double lo = dc::detail::parse_double(parts[0], "grid lo");
  const double hi = dc::detail::parse_double(parts[1], "grid hi");
  const int n = static_cast<int>(dc::detail::parse_double(parts[2], "grid n"));
  if (n < 1) throw dc::ConfigError("grid spec needs n >= 1");
  if (n == 1) return {lo};
  if (!(hi > lo)) throw dc::ConfigError("grid spec needs hi > lo");
  const bool log_spaced = parts.size() == 4 && parts[3] == "log";
  if (parts.size() == 4 && parts[3] != "log" && parts[3] != "lin") {
    throw dc::ConfigError("grid spacing must be 'lin' or 'log'");
  }
  if (log_spaced && !(lo > 0.0)) throw dc::ConfigError("log grid needs lo > 0");
  return log_spaced ? logspace(lo, hi, n) : linspace(lo, hi, n);
}

std::vector<double> load_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dc::ConfigError("cannot open grid file '" + path + "'");
  std::vector<double> grid;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string trimmed{dc::detail::trim(line)};
    if (trimmed.empty()) continue;
    grid.push_back(dc::detail::parse_double(trimmed, "grid file " + path));
  }
  if (grid.empty()) throw dc::ConfigError("grid file '" + path + "' holds no values");
  return grid;
}

// external units (CLI, CSV) -> internal SweepSpec units
double grid_to_internal(dc::SweepParameter param, double v) {
  return param == dc::SweepParameter::beamwidth ? dc::deg_to_rad(v) : v;
}

double grid_to_external(dc::SweepParameter param, double v) {
  return param == dc::SweepParameter::beamwidth ? dc::rad_to_deg(v) : v;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_compute(const CommonOptions& opts, bool exact_nested) {
  const ResolvedRun run = resolve_run(opts);
  const double p_cov = exact_nested
                           ? dc::coverage_probability_exact(run.cfg, run.env, run.quad)
                           : dc::coverage_probability(run.cfg, run.env, run.quad);
  const double p_los = dc::avg_los_closest(run.cfg, run.env, run.quad);
  const double mu0 = dc::mean_aggregate_interference(0.0, run.cfg, run.env, run.quad);
  const double ceiling = dc::nonvoid_probability(run.cfg);

  std::cout << "P_cov          = " << fmt12(p_cov) << "\n"
            << "P_LoS_closest  = " << fmt12(p_los) << "\n"
            << "mu_Iagg(0) [W] = " << fmt12(mu0) << "\n"
            << "void_ceiling   = " << fmt12(ceiling) << "\n";

  json doc{{"manifest", make_manifest("compute", run, std::nullopt)},
           {"results",
            {{"p_cov", p_cov},
             {"p_los_closest", p_los},
             {"mu_iagg_at_zero_w", mu0},
             {"void_ceiling", ceiling},
             {"exact_nested", exact_nested}}}};
  write_json(opts.json_path, doc);
  return 0;
}

int cmd_simulate(const CommonOptions& opts, std::int64_t trials, std::uint64_t seed,
                 const std::string& mode_text) {
  const ResolvedRun run = resolve_run(opts);
  if (trials < 1000) throw dc::ConfigError("simulate needs --trials >= 1000");
  const dc::SimMode mode = dc::parse_sim_mode(mode_text);
  const dc::MonteCarloReport report = dc::simulate_coverage(run.cfg, run.env, trials, seed, mode);

  std::cout << "coverage_estimate = " << fmt12(report.estimate) << " +- "
            << fmt12(report.std_error) << "  (trials=" << report.trials
            << ", mode=" << dc::to_string(report.mode) << ", seed=" << report.seed << ")\n";

  json doc{{"manifest", make_manifest("simulate", run, seed)},
           {"results",
            {{"estimate", report.estimate},
             {"std_error", report.std_error},
             {"trials", report.trials},
             {"seed", report.seed},
             {"mode", dc::to_string(report.mode)}}}};
  write_json(opts.json_path, doc);
  return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param_text,
              const std::string& grid_spec, const std::string& grid_file,
              const std::string& out_path) {
  const ResolvedRun run = resolve_run(opts);
  const dc::SweepParameter param = dc::parse_sweep_parameter(param_text);

  std::vector<double> external_grid;
  if (!grid_spec.empty() && !grid_file.empty()) {
    throw dc::ConfigError("--grid and --grid-file are mutually exclusive");
  }
  if (!grid_spec.empty()) external_grid = parse_grid_spec(grid_spec);
  else if (!grid_file.empty()) external_grid = load_grid_file(grid_file);
  else external_grid = default_grid(param);

  dc::SweepSpec spec;
  spec.parameter = param;
  spec.base_cfg = run.cfg;
  spec.env = run.env;
  spec.quad = run.quad;
  spec.grid.reserve(external_grid.size());
  for (double v : external_grid) spec.grid.push_back(grid_to_internal(param, v));

  const dc::SweepResult result = dc::sweep(spec);

  std::ofstream csv(out_path);
  if (!csv) throw dc::ConfigError("cannot open output file '" + out_path + "'");
  csv << "param,p_cov,p_los_closest,mu_iagg_at_zero\n";
  for (const auto& row : result.rows) {
    csv << fmt12(grid_to_external(param, row.param_value)) << "," << fmt12(row.p_cov) << ","
        << fmt12(row.p_los_closest) << "," << fmt12(row.mu_iagg_at_zero) << "\n";
  }
  csv.close();

  const double argmax_ext = grid_to_external(param, result.argmax_value);
  std::cout << "argmax " << dc::to_string(param) << " = " << fmt12(argmax_ext)
            << "  P_cov = " << fmt12(result.argmax_p_cov) << "  (" << result.rows.size()
            << " grid points -> " << out_path << ")\n";

  json rows = json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"param", grid_to_external(param, row.param_value)},
                    {"p_cov", row.p_cov},
                    {"p_los_closest", row.p_los_closest},
                    {"mu_iagg_at_zero", row.mu_iagg_at_zero}});
  }
  json doc{{"manifest", make_manifest("sweep", run, std::nullopt)},
           {"results",
            {{"parameter", dc::to_string(param)},
             {"argmax_value", argmax_ext},
             {"argmax_p_cov", result.argmax_p_cov},
             {"rows", rows}}}};
  write_json(opts.json_path, doc);
  return 0;
}

int cmd_optimize(const CommonOptions& opts, const std::string& param_text,
                 const std::string& grid_spec) {
  const ResolvedRun run = resolve_run(opts);
  const dc::SweepParameter param = dc::parse_sweep_parameter(param_text);

  std::vector<double> external_grid =
      grid_spec.empty() ? default_grid(param) : parse_grid_spec(grid_spec);

  dc::SweepSpec spec;
  spec.parameter = param;
  spec.base_cfg = run.cfg;
  spec.env = run.env;
  spec.quad = run.quad;
  for (double v : external_grid) spec.grid.push_back(grid_to_internal(param, v));

  const dc::SweepResult coarse = dc::sweep(spec);
  const std::size_t i = coarse.argmax_index;

  double refined_value = coarse.argmax_value;
  double refined_p_cov = coarse.argmax_p_cov;
  bool refined = false;
  if (i > 0 && i + 1 < coarse.rows.size()) {
    try {
      const auto best = dc::refine_argmax(spec, spec.grid[i - 1], spec.grid[i + 1]);
      refined_value = best.param_value;
      refined_p_cov = best.p_cov;
      refined = true;
    } catch (const dc::BracketError&) {
      // fall back to the grid argmax
    }
  }

  std::cout << "grid argmax " << dc::to_string(param) << " = "
            << fmt12(grid_to_external(param, coarse.argmax_value))
            << "  P_cov = " << fmt12(coarse.argmax_p_cov) << "\n";
  if (refined) {
    std::cout << "refined      " << dc::to_string(param) << " = "
              << fmt12(grid_to_external(param, refined_value))
              << "  P_cov = " << fmt12(refined_p_cov) << "\n";
  } else {
    std::cout << "refinement unavailable (argmax at grid edge or probe failed); "
                 "grid argmax reported\n";
  }

  json doc{{"manifest", make_manifest("optimize", run, std::nullopt)},
           {"results",
            {{"parameter", dc::to_string(param)},
             {"grid_argmax_value", grid_to_external(param, coarse.argmax_value)},
             {"grid_argmax_p_cov", coarse.argmax_p_cov},
             {"refined", refined},
             {"refined_value", grid_to_external(param, refined_value)},
             {"refined_p_cov", refined_p_cov}}}};
  write_json(opts.json_path, doc);
  return 0;
}

int cmd_validate(const CommonOptions& opts, std::int64_t trials, std::uint64_t seed) {
  const ResolvedRun run = resolve_run(opts);
  if (trials < 100000) throw dc::ConfigError("validate needs --trials >= 100000");

  bool all_pass = true;
  json checks = json::array();
  auto record = [&](const std::string& name, bool pass, double margin, double limit,
                    const std::string& detail) {
    all_pass = all_pass && pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail
              << "  (margin " << fmt12(margin) << ", limit " << fmt12(limit) << ")\n";
    checks.push_back({{"name", name}, {"pass", pass}, {"margin", margin}, {"limit", limit}});
  };

  // Lemma 1 against the field simulator
  const double half = run.cfg.half_beamwidth();
  for (double phi_c : {0.0, 0.1, 0.3, 0.6}) {
    if (phi_c >= half) continue;
    const auto mc = dc::simulate_mean_interference(run.cfg, run.env, phi_c, trials, seed);
    const double analytic = dc::mean_aggregate_interference(phi_c, run.cfg, run.env, run.quad);
    const double diff = std::abs(mc.estimate - analytic);
    const double limit = 3.0 * mc.std_error + run.quad.abs_tol;
    record("lemma1 phi_c=" + fmt12(phi_c), diff <= limit, diff, limit,
           "analytic=" + fmt12(analytic) + " mc=" + fmt12(mc.estimate) + "+-" +
               fmt12(mc.std_error));
  }

  // Theorem 1 against the coverage simulator (mean-field interference)
  {
    const auto mc = dc::simulate_coverage(run.cfg, run.env, trials, seed, dc::SimMode::mean_field);
    const double analytic = dc::coverage_probability(run.cfg, run.env, run.quad);
    const double diff = std::abs(mc.estimate - analytic);
    const double limit = 3.0 * mc.std_error + 1e-4;
    record("theorem1", diff <= limit, diff, limit,
           "analytic=" + fmt12(analytic) + " mc=" + fmt12(mc.estimate) + "+-" +
               fmt12(mc.std_error));
  }

  // Proposition 1 against the LoS simulator
  {
    const auto mc = dc::simulate_avg_los_closest(run.cfg, run.env, trials, seed);
    const double analytic = dc::avg_los_closest(run.cfg, run.env, run.quad);
    const double diff = std::abs(mc.estimate - analytic);
    const double limit = 3.0 * mc.std_error + 1e-6;
    record("proposition1", diff <= limit, diff, limit,
           "analytic=" + fmt12(analytic) + " mc=" + fmt12(mc.estimate) + "+-" +
               fmt12(mc.std_error));
  }

  // interference must be altitude-free
  {
    dc::SystemConfig low = run.cfg;
    low.h = 100.0;
    dc::SystemConfig high = run.cfg;
    high.h = 1000.0;
    const double phi_c = std::min(0.1, 0.5 * half);
    const double a = dc::mean_aggregate_interference(phi_c, low, run.env, run.quad);
    const double b = dc::mean_aggregate_interference(phi_c, high, run.env, run.quad);
    const double rel = a == 0.0 ? 0.0 : std::abs(a - b) / std::abs(a);
    record("altitude-invariance", rel < 1e-6, rel, 1e-6,
           "mu(h=100)=" + fmt12(a) + " mu(h=1000)=" + fmt12(b));
  }

  // interference must be exactly linear in density
  {
    dc::SystemConfig doubled = run.cfg;
    doubled.lambda = 2.0 * run.cfg.lambda;
    const double phi_c = std::min(0.1, 0.5 * half);
    const double base = dc::mean_aggregate_interference(phi_c, run.cfg, run.env, run.quad);
    const double twice = dc::mean_aggregate_interference(phi_c, doubled, run.env, run.quad);
    const double rel = base == 0.0 ? 0.0 : std::abs(twice - 2.0 * base) / std::abs(2.0 * base);
    record("density-linearity", rel <= 1e-12, rel, 1e-12,
           "mu(lambda)=" + fmt12(base) + " mu(2*lambda)=" + fmt12(twice));
  }

  json doc{{"manifest", make_manifest("validate", run, seed)},
           {"results", {{"all_pass", all_pass}, {"trials", trials}, {"checks", checks}}}};
  write_json(opts.json_path, doc);
  std::cout << (all_pass ? "validation suite: PASS\n" : "validation suite: FAIL\n");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverage analysis for a Poisson field of drone base stations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dc::kVersion);

  CommonOptions compute_opts, simulate_opts, sweep_opts, optimize_opts, validate_opts;

  auto* compute = app.add_subcommand(
      "compute", "analytic coverage probability, serving-drone LoS probability, mu_Iagg(0)");
  add_common_options(compute, compute_opts);
  bool exact_nested = false;
  compute->add_flag("--exact-nested", exact_nested,
                    "true nested quadrature instead of the interference profile");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage estimate");
  add_common_options(simulate, simulate_opts);
  std::int64_t sim_trials = 100000;
  std::uint64_t sim_seed = 1;
  std::string sim_mode = "mean_field";
  simulate->add_option("--trials", sim_trials, "number of trials (>= 1000)");
  simulate->add_option("--seed", sim_seed, "random seed");
  simulate->add_option("--mode", sim_mode, "mean_field | full_stochastic");

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
  add_common_options(sweep_cmd, sweep_opts);
  std::string sweep_param, sweep_grid, sweep_grid_file, sweep_out;
  sweep_cmd->add_option("--param", sweep_param, "altitude | density | beamwidth")->required();
  sweep_cmd->add_option("--grid", sweep_grid,
                        "lo:hi:n[:lin|log] (meters, 1/m^2, or degrees; default per parameter)");
  sweep_cmd->add_option("--grid-file", sweep_grid_file, "file with one grid value per line");
  sweep_cmd->add_option("--out", sweep_out, "CSV output path")->required();

  auto* optimize = app.add_subcommand("optimize",
                                      "sweep + golden-section refinement of the argmax");
  add_common_options(optimize, optimize_opts);
  std::string opt_param, opt_grid;
  optimize->add_option("--param", opt_param, "altitude | density | beamwidth")->required();
  optimize->add_option("--grid", opt_grid, "coarse grid lo:hi:n[:lin|log]");

  auto* validate_cmd = app.add_subcommand(
      "validate", "analytic-vs-simulation oracle suite (exit 1 on disagreement)");
  add_common_options(validate_cmd, validate_opts);
  std::int64_t val_trials = 100000;
  std::uint64_t val_seed = 42;
  validate_cmd->add_option("--trials", val_trials, "trials per oracle check (>= 100000)");
  validate_cmd->add_option("--seed", val_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (compute->parsed()) return cmd_compute(compute_opts, exact_nested);
    if (simulate->parsed()) return cmd_simulate(simulate_opts, sim_trials, sim_seed, sim_mode);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_opts, sweep_param, sweep_grid, sweep_grid_file, sweep_out);
    if (optimize->parsed()) return cmd_optimize(optimize_opts, opt_param, opt_grid);
    if (validate_cmd->parsed()) return cmd_validate(validate_opts, val_trials, val_seed);
  } catch (const dc::ToleranceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const dc::ConfigError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
