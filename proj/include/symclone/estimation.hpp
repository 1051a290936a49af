#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "symclone/cloner_model.hpp"
#include "symclone/detection.hpp"

namespace symclone {

/// Per-state clone fidelities over the six catalog states with their means and
/// population variances (divide by 6).
struct FidelityReport {
  double t = 0.0;
  std::array<CloneFidelities, kCatalogSize> per_state{};
  double mean_a = 0.0;
  double mean_b = 0.0;
  double variance_a = 0.0;
  double variance_b = 0.0;

  /// max - min of the per-state fidelities of clone A (or B).
  double spread_a() const;
  double spread_b() const;
};

/// Role psi:  f_A = (C++ + C+-)/sum, f_B = (C++ + C-+)/sum.
/// Role perp: f_A = (C-- + C-+)/sum, f_B = (C-- + C+-)/sum.
/// Throws DataError when the record has no counts.
CloneFidelities fidelities_from_counts(const CoincidenceCounts& counts, Role role);

/// Requires exactly one record per catalog state, all at the same t.
/// When `eta_correction` is set, every record is rescaled with it first.
FidelityReport report(std::span<const MeasurementRecord> records,
                      const std::optional<EfficiencyPair>& eta_correction = std::nullopt);

/// Which fidelity variance the calibration minimizes.
enum class CalibrationObjective { a, b, sum };

std::string_view to_string(CalibrationObjective objective);
/// Accepts "a", "b", "sum" (case-insensitive). Throws ConfigError otherwise.
CalibrationObjective parse_objective(std::string_view text);

double objective_value(const FidelityReport& r, CalibrationObjective objective);

struct CalibrationOptions {
  CalibrationObjective objective = CalibrationObjective::sum;
  double x_tol = 1e-10;
  double f_tol = 1e-14;
  int max_iterations = 20000;
  /// Grid pre-scan over [scan_lo, scan_hi]^2 with scan_points per axis; 0 disables it.
  int scan_points = 50;
  double scan_lo = 0.5;
  double scan_hi = 2.0;
  /// A minimizer closer than this to the search domain edge is flagged.
  double boundary_margin = 1e-6;
};

struct CalibrationResult {
  EfficiencyPair eta;
  double objective = 0.0;
  /// One calibrated report per record group, in input order.
  std::vector<FidelityReport> reports;
  bool boundary_hit = false;
  bool converged = false;
  int iterations = 0;
};

/// Finds the efficiencies in [0.2, 5]^2 whose rescaling minimizes the
/// fidelity variance of one six-state record set.
CalibrationResult calibrate(std::span<const MeasurementRecord> records,
                            const CalibrationOptions& opts = {});

/// Same, with the objective summed over several record sets (one per t)
/// that share a single pair of efficiencies.
CalibrationResult calibrate_pooled(std::span<const std::vector<MeasurementRecord>> groups,
                                   const CalibrationOptions& opts = {});

}  // namespace symclone
