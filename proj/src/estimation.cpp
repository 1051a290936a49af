#include "symclone/estimation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "symclone/errors.hpp"
#include "symclone/nelder_mead.hpp"

namespace symclone {

namespace {

double spread(const std::array<CloneFidelities, kCatalogSize>& v, double CloneFidelities::*field) {
  const auto [lo, hi] = std::minmax_element(
      v.begin(), v.end(), [field](const auto& x, const auto& y) { return x.*field < y.*field; });
  return (*hi).*field - (*lo).*field;
}

}  // namespace

double FidelityReport::spread_a() const { return spread(per_state, &CloneFidelities::fa); }
double FidelityReport::spread_b() const { return spread(per_state, &CloneFidelities::fb); }

CloneFidelities fidelities_from_counts(const CoincidenceCounts& c, Role role) {
  if (c.pp < 0.0 || c.pm < 0.0 || c.mp < 0.0 || c.mm < 0.0) {
    throw DataError("coincidence counts must be nonnegative");
  }
  const double total = c.total();
  if (!(total > 0.0)) {
    throw DataError("record has no coincidences; fidelity is undefined");
  }
  if (role == Role::psi) {
    return {(c.pp + c.pm) / total, (c.pp + c.mp) / total};
  }
  return {(c.mm + c.mp) / total, (c.mm + c.pm) / total};
}

FidelityReport report(std::span<const MeasurementRecord> records,
                      const std::optional<EfficiencyPair>& eta_correction) {
  if (records.size() != kCatalogSize) {
    std::ostringstream os;
    os << "expected " << kCatalogSize << " records (one per catalog state), got " << records.size();
    throw DataError(os.str());
  }
  FidelityReport r;
  r.t = records.front().t;
  std::array<bool, kCatalogSize> seen{};
  for (const MeasurementRecord& rec : records) {
    if (rec.state < 0 || rec.state >= kCatalogSize) throw DataError("record has invalid state index");
    if (seen[rec.state]) {
      throw DataError(std::string("duplicate record for state ") + state_label(rec.state));
    }
    if (rec.t != r.t) throw DataError("records in one set must share the same t");
    seen[rec.state] = true;
    const CoincidenceCounts c = eta_correction ? rescale_counts(rec.counts, *eta_correction) : rec.counts;
    r.per_state[rec.state] = fidelities_from_counts(c, rec.role());
  }

  // (1/6) sum f^2 - (1/36) (sum f)^2, evaluated in two passes to avoid cancellation near zero.
  constexpr double n = kCatalogSize;
  double sum_a = 0.0, sum_b = 0.0;
  for (const CloneFidelities& f : r.per_state) sum_a += f.fa, sum_b += f.fb;
  r.mean_a = sum_a / n;
  r.mean_b = sum_b / n;
  double sq_a = 0.0, sq_b = 0.0;
  for (const CloneFidelities& f : r.per_state) {
    sq_a += (f.fa - r.mean_a) * (f.fa - r.mean_a);
    sq_b += (f.fb - r.mean_b) * (f.fb - r.mean_b);
  }
  r.variance_a = sq_a / n;
  r.variance_b = sq_b / n;
  return r;
}

std::string_view to_string(CalibrationObjective objective) {
  switch (objective) {
    case CalibrationObjective::a: return "a";
    case CalibrationObjective::b: return "b";
    case CalibrationObjective::sum: return "sum";
  }
  return "sum";
}

CalibrationObjective parse_objective(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "a") return CalibrationObjective::a;
  if (lower == "b") return CalibrationObjective::b;
  if (lower == "sum") return CalibrationObjective::sum;
  throw ConfigError("unknown calibration objective '" + std::string(text) + "' (expected a, b or sum)");
}

double objective_value(const FidelityReport& r, CalibrationObjective objective) {
  switch (objective) {
    case CalibrationObjective::a: return r.variance_a;
    case CalibrationObjective::b: return r.variance_b;
    case CalibrationObjective::sum: return r.variance_a + r.variance_b;
  }
  return r.variance_a + r.variance_b;
}

CalibrationResult calibrate_pooled(std::span<const std::vector<MeasurementRecord>> groups,
                                   const CalibrationOptions& opts) {
  if (groups.empty()) throw DataError("calibration needs at least one record set");
  // Validates coverage and totals up front so the search never meets bad data.
  for (const auto& g : groups) (void)report(g);

  auto objective = [&](const std::array<double, 2>& x) {
    if (!(x[0] >= EfficiencyPair::kMin && x[0] <= EfficiencyPair::kMax &&
          x[1] >= EfficiencyPair::kMin && x[1] <= EfficiencyPair::kMax)) {
      return std::numeric_limits<double>::infinity();
    }
    const EfficiencyPair eta{x[0], x[1]};
    double total = 0.0;
    for (const auto& g : groups) total += objective_value(report(g, eta), opts.objective);
    return total;
  };

  std::array<double, 2> start{1.0, 1.0};
  double start_value = objective(start);
  if (opts.scan_points > 1) {
    const double step = (opts.scan_hi - opts.scan_lo) / (opts.scan_points - 1);
    for (int i = 0; i < opts.scan_points; ++i)
      for (int j = 0; j < opts.scan_points; ++j) {
        const std::array<double, 2> probe{opts.scan_lo + i * step, opts.scan_lo + j * step};
        if (const double v = objective(probe); v < start_value) start = probe, start_value = v;
      }
  }

  SimplexOptions<2> sopts;
  sopts.x_tol = opts.x_tol;
  sopts.f_tol = opts.f_tol;
  sopts.max_iterations = opts.max_iterations;
  const SimplexResult<2> found = nelder_mead(objective, start, sopts);

  CalibrationResult res;
  res.eta = {found.x[0], found.x[1]};
  res.objective = found.value;
  res.converged = found.converged;
  res.iterations = found.iterations;
  for (double v : found.x) {
    if (v - EfficiencyPair::kMin < opts.boundary_margin || EfficiencyPair::kMax - v < opts.boundary_margin) {
      res.boundary_hit = true;
    }
  }
  res.reports.reserve(groups.size());
  for (const auto& g : groups) res.reports.push_back(report(g, res.eta));
  return res;
}

CalibrationResult calibrate(std::span<const MeasurementRecord> records, const CalibrationOptions& opts) {
  const std::vector<MeasurementRecord> group(records.begin(), records.end());
  return calibrate_pooled(std::span(&group, 1), opts);
}

}  // namespace symclone
