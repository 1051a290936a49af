#include "symclone/records.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <string>

#include "symclone/errors.hpp"

namespace symclone {

namespace {

const char* role_label(Role r) { return r == Role::psi ? "psi" : "perp"; }

int find_label(const std::string& s, std::size_t row) {
  for (int k = 0; k < kCatalogSize; ++k)
    if (s == state_label(k)) return k;
  throw DataError("record row " + std::to_string(row + 1) + ": unknown state label '" + s + "'");
}

}  // namespace

Table records_table(std::span<const MeasurementRecord> records) {
  Table t{"records", {"t", "state", "basis", "role", "c_pp", "c_pm", "c_mp", "c_mm", "eta_a", "eta_b"}, {}};
  for (const MeasurementRecord& r : records) {
    const Cell eta_a = r.true_eta ? Cell(r.true_eta->eta_a) : Cell(std::string());
    const Cell eta_b = r.true_eta ? Cell(r.true_eta->eta_b) : Cell(std::string());
    t.add_row({r.t, std::string(state_label(r.state)), std::string(basis_label(r.basis())),
               std::string(role_label(r.role())), r.counts.pp, r.counts.pm, r.counts.mp, r.counts.mm,
               eta_a, eta_b});
  }
  return t;
}

std::vector<MeasurementRecord> records_from_table(const Table& table) {
  std::vector<MeasurementRecord> out;
  out.reserve(table.rows.size());
  const bool has_eta = [&] {
    for (const auto& c : table.columns)
      if (c == "eta_a") return true;
    return false;
  }();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto where = [i](const std::string& msg) {
      return DataError("record row " + std::to_string(i + 1) + ": " + msg);
    };
    MeasurementRecord r;
    try {
      r.t = table.number(i, "t");
      r.state = find_label(table.text(i, "state"), i);
      if (table.text(i, "basis") != basis_label(r.basis())) throw where("basis label does not match state");
      if (table.text(i, "role") != role_label(r.role())) throw where("role does not match state");
      r.counts = {table.number(i, "c_pp"), table.number(i, "c_pm"), table.number(i, "c_mp"),
                  table.number(i, "c_mm")};
      if (has_eta) {
        const Cell& a = table.rows[i][table.column("eta_a")];
        const Cell& b = table.rows[i][table.column("eta_b")];
        if (std::holds_alternative<double>(a) && std::holds_alternative<double>(b)) {
          r.true_eta = EfficiencyPair{std::get<double>(a), std::get<double>(b)};
        }
      }
    } catch (const DataError& e) {
      const std::string msg = e.what();
      if (msg.rfind("record row", 0) == 0) throw;
      throw where(msg);
    }
    if (!(r.t >= 0.0 && r.t <= 1.0)) throw where("t outside [0, 1]");
    if (r.counts.pp < 0 || r.counts.pm < 0 || r.counts.mp < 0 || r.counts.mm < 0) {
      throw where("negative coincidence count");
    }
    out.push_back(r);
  }
  return out;
}

std::vector<MeasurementRecord> read_records(std::istream& is) {
  return records_from_table(read_csv(is, "records"));
}

std::vector<MeasurementRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read record file " + path.string());
  try {
    return read_records(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<std::vector<MeasurementRecord>> group_by_t(std::span<const MeasurementRecord> records) {
  std::vector<std::vector<MeasurementRecord>> groups;
  for (const MeasurementRecord& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.front().t == r.t; });
    if (it == groups.end()) {
      groups.push_back({r});
    } else {
      it->push_back(r);
    }
  }
  return groups;
}

}  // namespace symclone
