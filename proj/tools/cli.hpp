#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bucklab/report.hpp"

namespace bucklab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kRecordSchema = "bucklab.records/1";

enum class Format { text, records };

// Writes reports either as indented text or as JSON lines: one header record
// carrying the schema version, then one record per value and per check, then a
// summary. All numbers travel as strings ("p/q" for rationals).
void write_reports(std::ostream& out, Format format, const std::string& command, const std::vector<Report>& reports);

// Entry point shared by the executable and the tests. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bucklab::cli
