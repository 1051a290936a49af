#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symclone/cloner_model.hpp"
#include "symclone/detection.hpp"
#include "symclone/estimation.hpp"

namespace symclone {

enum class OutputFormat { csv, json };

/// Resolved settings for one CLI run. Precedence: flag > file > default.
///
/// Recognized keys (file `key = value`, `#` comments):
///   t_values        comma list in [0, 1]           default sqrt(n/5), n = 0..5
///   eta_a, eta_b    true relative efficiencies     default 1.046, 0.840
///   counts          overall rate N per setting     default 1e5
///   seed            root seed                      default 1
///   noiseless       true/false                     default false
///   objective       a | b | sum                    default sum
///   pooled          calibrate one eta for all t    default false
///   strict          boundary hit is an error       default false
///   out             output directory               default stdout
///   format          csv | json                     default csv
///   triple          F_A,F_B,P for robustness       default unset (use t_values)
///   eps_max         robustness grid half-width     default 0.2
///   eps_steps       robustness grid points/axis    default 9
///   curve_points    analytic curve resolution      default 200
struct RunConfig {
  std::vector<double> t_values;
  EfficiencyPair eta_true{1.046, 0.840};
  double counts_per_setting = 1e5;
  std::uint64_t seed = 1;
  bool noiseless = false;
  CalibrationObjective objective = CalibrationObjective::sum;
  bool pooled = false;
  bool strict = false;
  std::string output_path;
  OutputFormat output_format = OutputFormat::csv;
  std::optional<MachineTriple> triple;
  double eps_max = 0.2;
  int eps_steps = 9;
  int curve_points = 200;

  RunConfig();

  /// Parses one setting. `where` prefixes diagnostics, e.g. "run.cfg:3" or "--eta-a".
  /// Throws ConfigError.
  void set(std::string_view key, std::string_view value, std::string_view where);

  /// Resolved settings as `key = value` lines, re-readable by load_config_file.
  std::string to_text() const;
};

/// sqrt(n/5), n = 0..5
std::vector<double> default_t_values();

/// Applies every setting in the file to `config`. Throws ConfigError with line numbers.
void load_config_file(const std::filesystem::path& path, RunConfig& config);
void load_config_text(std::string_view text, std::string_view source_name, RunConfig& config);

}  // namespace symclone
