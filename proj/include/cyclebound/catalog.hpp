#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cyclebound/cycles.hpp"

namespace cyclebound {

/// One JSON object per line; see docs/catalog-format.md. Big integers
/// (elements, a_min) are decimal strings, everything else a JSON integer.
std::string to_catalog_line(const CycleRecord& record);

/// Parses one line without checking that the values form a cycle; that is
/// the job of the verifier.
CycleRecord parse_catalog_line(const std::string& line);

struct CatalogEntry {
  std::size_t line_number = 0;
  CycleRecord record;
};

std::vector<CatalogEntry> read_catalog(const std::filesystem::path& path);

/// Writes the union of the file's current records and `records`,
/// deduplicated and in catalog order. Returns the number of records written.
std::size_t merge_into_catalog(const std::filesystem::path& path, const std::vector<CycleRecord>& records);

}  // namespace cyclebound
