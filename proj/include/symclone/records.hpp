#pragma once

// Record file: CSV with header
//   t,state,basis,role,c_pp,c_pm,c_mp,c_mm,eta_a,eta_b
// state in {H,V,D,A,R,L}, basis in {HV,DA,RL}, role in {psi,perp}. The eta
// columns hold the synthetic truth and are empty for measured data.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "symclone/detection.hpp"
#include "symclone/table.hpp"

namespace symclone {

Table records_table(std::span<const MeasurementRecord> records);

/// Throws DataError with the row number on unknown labels or inconsistent basis/role.
std::vector<MeasurementRecord> records_from_table(const Table& table);

std::vector<MeasurementRecord> read_records(std::istream& is);
std::vector<MeasurementRecord> read_records(const std::filesystem::path& path);

/// Splits records into six-state sets by t, in order of first appearance.
std::vector<std::vector<MeasurementRecord>> group_by_t(std::span<const MeasurementRecord> records);

}  // namespace symclone
