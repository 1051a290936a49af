// symclone: analytic, simulation, calibration and robustness tables for the
// partial-symmetrization asymmetric cloner.
//
// Exit codes: 0 success, 1 configuration error, 2 data error,
// 3 calibration hit the search boundary (only with --strict).

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "symclone/config.hpp"
#include "symclone/errors.hpp"
#include "symclone/pipelines.hpp"
#include "symclone/records.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitBoundary = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-symmetrization quantum cloner: model, simulation, calibration, robustness"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  // Flag name -> config key. Values pass through RunConfig::set so file and flag share validation.
  std::map<std::string, std::optional<std::string>> overrides = {
      {"t_values", {}}, {"eta_a", {}},  {"eta_b", {}},  {"counts", {}},  {"seed", {}},
      {"objective", {}}, {"out", {}},   {"format", {}}, {"triple", {}},  {"eps_max", {}},
      {"eps_steps", {}}, {"curve_points", {}}};
  bool noiseless = false, strict = false, pooled = false;

  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--t", overrides["t_values"], "comma-separated transmittances in [0,1]");
  app.add_option("--eta-a", overrides["eta_a"], "true relative efficiency of block A (synthetic data)");
  app.add_option("--eta-b", overrides["eta_b"], "true relative efficiency of block B (synthetic data)");
  app.add_option("--counts", overrides["counts"], "overall coincidence rate N per setting");
  app.add_option("--seed", overrides["seed"], "root random seed");
  app.add_flag("--noiseless", noiseless, "use expected rates instead of Poisson samples");
  app.add_option("--objective", overrides["objective"], "calibration objective: a, b or sum");
  app.add_flag("--pooled", pooled, "calibrate a single efficiency pair across all t values");
  app.add_flag("--strict", strict, "treat a calibration boundary hit as an error (exit 3)");
  app.add_option("--out", overrides["out"], "output directory (default: stdout)");
  app.add_option("--format", overrides["format"], "csv or json");
  app.add_option("--triple", overrides["triple"], "robustness machine F_A,F_B,P instead of t values");
  app.add_option("--eps-max", overrides["eps_max"], "robustness grid half-width");
  app.add_option("--eps-steps", overrides["eps_steps"], "robustness grid points per axis");
  app.add_option("--curve-points", overrides["curve_points"], "analytic curve resolution");

  auto* analytic = app.add_subcommand("analytic", "closed-form fidelities and trade-off");
  auto* simulate = app.add_subcommand("simulate", "synthetic coincidence records and uncalibrated fidelities");
  auto* calibrate = app.add_subcommand("calibrate", "variance-minimizing efficiency calibration");
  std::string record_file;
  calibrate->add_option("records", record_file, "record file written by simulate")->required();
  auto* robustness = app.add_subcommand("robustness", "miscalibration error analysis");
  auto* schema = app.add_subcommand("schema", "column order of every output table");
  for (auto* sub : {analytic, simulate, calibrate, robustness, schema}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  using namespace symclone;
  RunConfig config;
  try {
    if (config_path) load_config_file(*config_path, config);
    for (const auto& [key, value] : overrides)
      if (value) config.set(key, *value, "command line");
    if (noiseless) config.noiseless = true;
    if (pooled) config.pooled = true;
    if (strict) config.strict = true;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    CommandOutput out;
    if (*analytic) out = cmd_analytic(config);
    else if (*simulate) out = cmd_simulate(config);
    else if (*robustness) out = cmd_robustness(config);
    else if (*schema) out = cmd_schema();
    else out = cmd_calibrate(read_records(record_file), config);

    write_output(out, config, std::cout);
    if (out.boundary_hit) {
      std::cerr << "warning: calibration minimizer reached the search-domain boundary\n";
      if (config.strict) return kExitBoundary;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
