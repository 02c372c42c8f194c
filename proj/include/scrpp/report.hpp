#pragma once

// Serialization of PermReports (one JSON object per line) and per-family
// summaries (CSV).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scrpp/families.hpp"

namespace scrpp {

/// Compact JSON object with sorted keys; no trailing newline.
std::string to_json_line(const PermReport& r);

/// Multi-line human summary used by `construct`.
std::string describe(const PermReport& r);

struct FamilySummary {
  std::string family;
  std::uint64_t q = 0;
  std::uint64_t instances = 0;
  std::uint64_t agree = 0;
  std::uint64_t disagree = 0;
  std::uint64_t not_covered = 0;
  std::uint64_t oracle_pp = 0;
  std::uint64_t printed_form_checked = 0;
  std::uint64_t printed_form_mismatch = 0;
  std::uint64_t delta_checked = 0;
  std::uint64_t delta_inconsistent = 0;
  /// Per alternative: instances where it made a prediction, and where that matched the oracle.
  std::map<std::string, std::uint64_t> alt_covered;
  std::map<std::string, std::uint64_t> alt_agree;

  void add(const PermReport& r);
};

/// Column header plus one row per summary; alternatives as "name=agree/covered" in one column.
std::string summary_csv(const std::vector<FamilySummary>& rows);

}  // namespace scrpp
