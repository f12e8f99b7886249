#pragma once

// Regression sweep over shells, emitted as CSV.
//
// d = 2 columns: m, r2, N1, A1, ext_count, ext_ratio, random_norm_sq
//   N1           exact max count of a cap of radius² ⌊√m⌋
//   A1           best single unit band over axis, point and chord-normal directions
//   ext_count    members of the extremal cap construction on N1's cap
//   ext_ratio    norm² / (2|u|) of that construction, NA when the phase condition fails
//   random_norm_sq  norm² on γ = (t, 0) of a seeded random eigenfunction
// d = 3 columns: m, r3, band_eq, A1, A2, sub_count, sub_ratio
//   band_eq      points with 0 <= x3 <= 1
//   A1           best unit band over the 13 directions in {-1,0,1}^3
//   A2           best pair of transverse unit bands over six fixed axis pairs
//   sub_count, sub_ratio  extremal cap on the x3 = 0 sub-circle with k = 2, NA if empty

#include <cstdint>
#include <ostream>
#include <string>

namespace toral {

struct ReportConfig {
  int d = 2;
  std::int64_t m_min = 1;
  std::int64_t m_max = 10000;
  std::uint64_t seed = 0;
};

/// Rows for every m in range with a nonempty shell, ascending.
void write_report(std::ostream& out, const ReportConfig& config);
std::string report_csv(const ReportConfig& config);

}  // namespace toral
