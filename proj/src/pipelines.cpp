#include "symclone/pipelines.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "symclone/cloner_model.hpp"
#include "symclone/errors.hpp"
#include "symclone/estimation.hpp"
#include "symclone/records.hpp"
#include "symclone/robustness.hpp"

namespace symclone {

const Table& CommandOutput::table(const std::string& name) const {
  for (const Table& t : tables)
    if (t.name == name) return t;
  throw DataError("command output has no table " + name);
}

namespace {

std::string text(const char* s) { return std::string(s); }

const char* role_name(Role r) { return r == Role::psi ? "psi" : "perp"; }

Table analytic_table(std::string name, const std::vector<double>& ts) {
  Table table{std::move(name), {"t", "fa", "fb", "p", "success_prob", "tradeoff_residual"}, {}};
  for (double t : ts) {
    const MachineTriple m = machine_triple(t);
    table.add_row({t, m.fa, m.fb, m.p, success_probability(t), tradeoff_residual(m.fa, m.fb)});
  }
  return table;
}

struct SchemaEntry {
  const char* table;
  std::vector<std::pair<const char*, const char*>> columns;
};

const std::vector<SchemaEntry>& schema_entries() {
  static const std::vector<SchemaEntry> entries = {
      {"settings",
       {{"t", "amplitude transmittance of the antisymmetric arm"},
        {"fa", "fidelity of clone A (idler side)"},
        {"fb", "fidelity of clone B (signal side)"},
        {"p", "covariant-machine parameter 2/(3+t^2)"},
        {"success_prob", "post-selection success probability (3+t^2)/4"},
        {"tradeoff_residual", "(1-fa)(1-fb)-(fa+fb-3/2)^2, zero on the optimal curve"}}},
      {"curve", {{"t", "as in settings"}, {"fa", ""}, {"fb", ""}, {"p", ""}, {"success_prob", ""},
                 {"tradeoff_residual", ""}}},
      {"records",
       {{"t", "transmittance"},
        {"state", "input catalog state H,V,D,A,R,L"},
        {"basis", "analysis basis HV,DA,RL"},
        {"role", "psi or perp within the basis"},
        {"c_pp", "coincidences D_A+ & D_B+"},
        {"c_pm", "coincidences D_A+ & D_B-"},
        {"c_mp", "coincidences D_A- & D_B+"},
        {"c_mm", "coincidences D_A- & D_B-"},
        {"eta_a", "synthetic true eta_A, empty for measured data"},
        {"eta_b", "synthetic true eta_B, empty for measured data"}}},
      {"fidelities",
       {{"t", ""}, {"state", ""}, {"basis", ""}, {"role", ""},
        {"f_a", "measured fidelity of clone A"}, {"f_b", "measured fidelity of clone B"}}},
      {"summary",
       {{"t", ""}, {"mean_a", "six-state mean fidelity of clone A"}, {"mean_b", ""},
        {"variance_a", "population variance over the six states"}, {"variance_b", ""},
        {"spread_a", "max - min per-state fidelity"}, {"spread_b", ""},
        {"theory_fa", "closed-form fidelity"}, {"theory_fb", ""}}},
      {"calibration",
       {{"t", ""},
        {"fit", "per-t or pooled"},
        {"objective_kind", "a, b or sum"},
        {"eta_a", "recovered relative efficiency of block A"},
        {"eta_b", "recovered relative efficiency of block B"},
        {"objective", "objective value of this t at the recovered eta"},
        {"boundary_hit", "1 when the minimizer touches the [0.2,5] edge"},
        {"converged", "1 when the simplex met its tolerances"},
        {"mean_a_before", ""}, {"mean_b_before", ""}, {"mean_a_after", ""}, {"mean_b_after", ""},
        {"spread_a_before", ""}, {"spread_b_before", ""}, {"spread_a_after", ""}, {"spread_b_after", ""},
        {"true_eta_a", "synthetic truth when present"}, {"true_eta_b", ""}}},
      {"calibrated_fidelities",
       {{"t", ""}, {"state", ""}, {"basis", ""}, {"role", ""},
        {"f_a_before", ""}, {"f_b_before", ""}, {"f_a_after", ""}, {"f_b_after", ""}}},
      {"coefficients",
       {{"machine", "t=<value> or triple"},
        {"t", "empty for an explicit triple"},
        {"fa", ""}, {"fb", ""}, {"p", ""},
        {"clone", "A or B"},
        {"coeff_own", "coefficient of the clone's own mismatch squared"},
        {"coeff_cross", "coefficient of eps_A eps_B"},
        {"coeff_other", "coefficient of the other mismatch squared"},
        {"bound_factor", "largest-magnitude eigenvalue of the quadratic form"}}},
      {"robustness_grid",
       {{"machine", ""}, {"eps_a", ""}, {"eps_b", ""},
        {"exact_a", "exact mean-fidelity error of clone A"},
        {"quadratic_a", "second-order approximation"},
        {"bound_a", "eigenvalue bound"},
        {"exact_b", ""}, {"quadratic_b", ""}, {"bound_b", ""}}},
  };
  return entries;
}

}  // namespace

CommandOutput cmd_analytic(const RunConfig& config) {
  CommandOutput out{"analytic", {}, false};
  out.tables.push_back(analytic_table("settings", config.t_values));
  std::vector<double> dense;
  const int n = config.curve_points;
  for (int i = 0; i < n; ++i) dense.push_back(static_cast<double>(i) / (n - 1));
  out.tables.push_back(analytic_table("curve", dense));
  return out;
}

CommandOutput cmd_simulate(const RunConfig& config) {
  CommandOutput out{"simulate", {}, false};
  std::vector<MeasurementRecord> all;
  Table fid{"fidelities", {"t", "state", "basis", "role", "f_a", "f_b"}, {}};
  Table summary{"summary",
                {"t", "mean_a", "mean_b", "variance_a", "variance_b", "spread_a", "spread_b", "theory_fa",
                 "theory_fb"},
                {}};
  for (std::size_t j = 0; j < config.t_values.size(); ++j) {
    const double t = config.t_values[j];
    const auto recs = run_experiment(t, config.eta_true, config.counts_per_setting,
                                     derive_seed(config.seed, j), config.noiseless);
    const FidelityReport r = report(recs);
    for (int k = 0; k < kCatalogSize; ++k) {
      fid.add_row({t, text(state_label(k)), text(basis_label(basis_of(k))), text(role_name(role_of(k))),
                   r.per_state[k].fa, r.per_state[k].fb});
    }
    const CloneFidelities theory = clone_fidelities(t);
    summary.add_row({t, r.mean_a, r.mean_b, r.variance_a, r.variance_b, r.spread_a(), r.spread_b(),
                     theory.fa, theory.fb});
    all.insert(all.end(), recs.begin(), recs.end());
  }
  out.tables.push_back(records_table(all));
  out.tables.push_back(std::move(fid));
  out.tables.push_back(std::move(summary));
  return out;
}

CommandOutput cmd_calibrate(std::span<const MeasurementRecord> records, const RunConfig& config) {
  CommandOutput out{"calibrate", {}, false};
  const auto groups = group_by_t(records);
  if (groups.empty()) throw DataError("record set is empty");

  CalibrationOptions opts;
  opts.objective = config.objective;
  std::vector<CalibrationResult> fits;
  if (config.pooled) {
    fits.push_back(calibrate_pooled(groups, opts));
  } else {
    for (const auto& g : groups) fits.push_back(calibrate(g, opts));
  }

  Table cal{"calibration",
            {"t", "fit", "objective_kind", "eta_a", "eta_b", "objective", "boundary_hit", "converged",
             "mean_a_before", "mean_b_before", "mean_a_after", "mean_b_after", "spread_a_before",
             "spread_b_before", "spread_a_after", "spread_b_after", "true_eta_a", "true_eta_b"},
            {}};
  Table fid{"calibrated_fidelities",
            {"t", "state", "basis", "role", "f_a_before", "f_b_before", "f_a_after", "f_b_after"},
            {}};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const CalibrationResult& fit = config.pooled ? fits.front() : fits[i];
    const FidelityReport& after = config.pooled ? fit.reports[i] : fit.reports.front();
    const FidelityReport before = report(groups[i]);
    out.boundary_hit = out.boundary_hit || fit.boundary_hit;
    const auto& truth = groups[i].front().true_eta;
    cal.add_row({before.t, std::string(config.pooled ? "pooled" : "per-t"),
                 std::string(to_string(config.objective)), fit.eta.eta_a, fit.eta.eta_b,
                 objective_value(after, config.objective), fit.boundary_hit ? 1.0 : 0.0,
                 fit.converged ? 1.0 : 0.0, before.mean_a, before.mean_b, after.mean_a, after.mean_b,
                 before.spread_a(), before.spread_b(), after.spread_a(), after.spread_b(),
                 truth ? Cell(truth->eta_a) : Cell(std::string()),
                 truth ? Cell(truth->eta_b) : Cell(std::string())});
    for (int k = 0; k < kCatalogSize; ++k) {
      fid.add_row({before.t, text(state_label(k)), text(basis_label(basis_of(k))),
                   text(role_name(role_of(k))), before.per_state[k].fa, before.per_state[k].fb,
                   after.per_state[k].fa, after.per_state[k].fb});
    }
  }
  out.tables.push_back(std::move(cal));
  out.tables.push_back(std::move(fid));
  return out;
}

CommandOutput cmd_robustness(const RunConfig& config) {
  CommandOutput out{"robustness", {}, false};
  struct Named {
    std::string label;
    Cell t;
    MachineTriple m;
  };
  std::vector<Named> machines;
  if (config.triple) {
    machines.push_back({"triple", std::string(), *config.triple});
  } else {
    for (double t : config.t_values) machines.push_back({"t=" + format_number(t), t, machine_triple(t)});
  }
  Table coeffs{"coefficients",
               {"machine", "t", "fa", "fb", "p", "clone", "coeff_own", "coeff_cross", "coeff_other",
                "bound_factor"},
               {}};
  Table grid{"robustness_grid",
             {"machine", "eps_a", "eps_b", "exact_a", "quadratic_a", "bound_a", "exact_b", "quadratic_b",
              "bound_b"},
             {}};
  const int n = config.eps_steps;
  for (const Named& nm : machines) {
    const QuadraticErrorForm fa = taylor_form(nm.m);
    const QuadraticErrorForm fb = taylor_form(nm.m.swapped());
    coeffs.add_row({nm.label, nm.t, nm.m.fa, nm.m.fb, nm.m.p, std::string("A"), fa.coeff_aa, fa.coeff_ab,
                    fa.coeff_bb, fa.bound_factor()});
    coeffs.add_row({nm.label, nm.t, nm.m.fa, nm.m.fb, nm.m.p, std::string("B"), fb.coeff_aa, fb.coeff_ab,
                    fb.coeff_bb, fb.bound_factor()});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double ea = -config.eps_max + 2.0 * config.eps_max * i / (n - 1);
        const double eb = -config.eps_max + 2.0 * config.eps_max * j / (n - 1);
        const EfficiencyPair eta = MismatchPair::make(ea, eb).efficiency();
        const CloneAnalysis a = clone_a_analysis(nm.m, eta);
        const CloneAnalysis b = clone_b_analysis(nm.m, eta);
        grid.add_row({nm.label, ea, eb, a.exact_error, a.quadratic_error, a.bound, b.exact_error,
                      b.quadratic_error, b.bound});
      }
  }
  out.tables.push_back(std::move(coeffs));
  out.tables.push_back(std::move(grid));
  return out;
}

CommandOutput cmd_schema() {
  CommandOutput out{"schema", {}, false};
  Table t{"schema", {"table", "index", "column", "description"}, {}};
  for (const SchemaEntry& e : schema_entries())
    for (std::size_t i = 0; i < e.columns.size(); ++i)
      t.add_row({text(e.table), static_cast<double>(i), text(e.columns[i].first), text(e.columns[i].second)});
  out.tables.push_back(std::move(t));
  return out;
}

namespace {

nlohmann::json to_json(const CommandOutput& out, const RunConfig& config) {
  nlohmann::json doc;
  doc["command"] = out.command;
  nlohmann::json cfg = nlohmann::json::object();
  std::istringstream lines(config.to_text());
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
  }
  doc["config"] = cfg;
  for (const Table& t : out.tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json r = nlohmann::json::array();
      // Same 12-digit rounding as the CSV output.
      for (const Cell& c : row) {
        if (const double* v = std::get_if<double>(&c); v && std::isfinite(*v)) {
          r.push_back(std::stod(format_number(*v)));
        } else {
          r.push_back(format_cell(c));
        }
      }
      rows.push_back(std::move(r));
    }
    doc["tables"][t.name] = {{"columns", t.columns}, {"rows", std::move(rows)}};
  }
  return doc;
}

std::string csv_text(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace

void write_output(const CommandOutput& out, const RunConfig& config, std::ostream& console) {
  const bool json = config.output_format == OutputFormat::json;
  if (config.output_path.empty()) {
    if (json) {
      console << to_json(out, config).dump(2) << '\n';
      return;
    }
    for (const Table& t : out.tables) console << "# table: " << t.name << '\n' << csv_text(t) << '\n';
    return;
  }
  const std::filesystem::path dir(config.output_path);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
  if (json) {
    write_file_atomic(dir / (out.command + ".json"), to_json(out, config).dump(2) + "\n");
    for (const Table& t : out.tables)
      if (t.name == "records") write_file_atomic(dir / "records.csv", csv_text(t));
  } else {
    for (const Table& t : out.tables) write_file_atomic(dir / (t.name + ".csv"), csv_text(t));
    write_file_atomic(dir / "config.txt", config.to_text());
  }
}

}  // namespace symclone
