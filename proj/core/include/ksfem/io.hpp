#pragma once

#include <string>
#include <vector>

#include "ksfem/diagnostics.hpp"
#include "ksfem/solver.hpp"

namespace ksfem {

/// Time-series CSV with the fixed header
/// step,t,l1_u,l1_v,l2_v,linf_u,linf_v,min_u,min_v,energy,picard_u,picard_v,hk_indicator
/// and 17-significant-digit floats, newline terminated.
void write_timeseries_csv(const std::vector<DiagnosticsRecord>& records,
                          const std::string& path);

/// Incremental CSV writer used by the CLI so partial results survive a
/// failed run.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void append(const DiagnosticsRecord& record);

 private:
  std::string path_;
};

std::string format_csv_row(const DiagnosticsRecord& record);

/// Legacy ASCII VTK unstructured-grid snapshot with point-data scalars "u"
/// and "v" in mesh node order.
void write_snapshot(const SimState& state, const std::string& path);

}  // namespace ksfem
