#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "symclone/config.hpp"
#include "symclone/table.hpp"

namespace symclone {

struct CommandOutput {
  std::string command;
  std::vector<Table> tables;
  /// Some calibration ended within the margin of the search-domain edge.
  bool boundary_hit = false;

  const Table& table(const std::string& name) const;
};

/// Closed-form fidelities, success probability and trade-off residual on the
/// configured t grid ("settings") and a dense grid over [0, 1] ("curve").
CommandOutput cmd_analytic(const RunConfig& config);

/// Synthetic experiment per t: "records", uncalibrated per-state "fidelities", "summary".
/// t-setting j uses seed derive_seed(config.seed, j).
CommandOutput cmd_simulate(const RunConfig& config);

/// Calibration per t (or pooled) with before/after fidelities:
/// "calibration" and "calibrated_fidelities".
CommandOutput cmd_calibrate(std::span<const MeasurementRecord> records, const RunConfig& config);

/// Taylor coefficients and bound per machine ("coefficients") and the exact vs
/// quadratic error over the mismatch grid ("robustness_grid").
CommandOutput cmd_robustness(const RunConfig& config);

/// Column documentation for every table above ("schema").
CommandOutput cmd_schema();

/// Without an output path the tables go to `console` as CSV blocks headed by
/// "# table: <name>" (or as one JSON document). With a path, a directory is
/// created holding <table>.csv files plus config.txt, or <command>.json; the
/// records table is always also written as records.csv.
void write_output(const CommandOutput& out, const RunConfig& config, std::ostream& console);

}  // namespace symclone
