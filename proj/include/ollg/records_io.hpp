#pragma once

#include <string>
#include <vector>

#include "ollg/diagnostics.hpp"

namespace ollg {

extern const char* const kRecordsCsvHeader;

/// 17 pinned columns, decimal text with 17 significant digits (doubles
/// round-trip exactly).
std::string records_to_csv(const std::vector<EnergyRecord>& records);
void write_records_csv(const std::string& path, const std::vector<EnergyRecord>& records);

/// Parses a records.csv produced by write_records_csv.  Only CSV-backed
/// fields are populated (the in-memory extras grad_l2_sq/dirichlet/v_part
/// stay zero).
std::vector<EnergyRecord> read_records_csv(const std::string& path);

std::string format_g17(double v);

} // namespace ollg
