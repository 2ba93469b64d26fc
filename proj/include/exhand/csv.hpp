#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "exhand/runlog.hpp"
#include "exhand/sweep.hpp"

namespace exhand {

using CsvHeader = std::vector<std::pair<std::string, std::string>>;

// Logs: `# key = value` comment lines, then the column row
// t,q,qdot,F_des,I_des,c,F_mon (drop) or the same plus d,q_lim (bilateral).
// Floats round-trip exactly (shortest representation); c is 0/1; missing d/q_lim are "nan".
void write_log_csv(std::ostream& out, const RunLog& log);
void write_log_csv(const std::filesystem::path& path, const RunLog& log);
/// Throws CsvError naming the line number of the first malformed row.
RunLog read_log_csv(std::istream& in);
RunLog read_log_csv(const std::filesystem::path& path);

/// One row per cell: index,f,k,b,status,stiffness,note.
void write_sweep_cells_csv(std::ostream& out, const SweepReport& rep, const CsvHeader& header);
/// One row per frequency: Frequency,k,b,Stiffness,max_stable_k_b0 plus the
/// hardware reference row for the same frequency when there is one.
void write_sweep_summary_csv(std::ostream& out, const SweepReport& rep, const CsvHeader& header);

}  // namespace exhand
