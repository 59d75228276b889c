#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "ingham/config.hpp"
#include "ingham/verify.hpp"

namespace ingham {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitError = 2;

/// Runs the configured experiment. Throws on runtime errors (domain, spectrum,
/// admissibility, quadrature that cannot produce a value).
ExperimentReport execute(const RunConfig& config);

/// Header `abscissa,measured,reference,ratio`, values with 12 significant digits.
std::string format_csv(const std::vector<ReportRow>& rows);

/// Sidecar: effective config, metadata, slopes, checks, flagged rows and status.
nlohmann::json report_json(const ExperimentReport& report, const RunConfig& config, int status);

/// CSV and JSON targets for an output path; a trailing .csv or .json is dropped first.
struct OutputPaths {
  std::filesystem::path csv;
  std::filesystem::path json;
};
OutputPaths output_paths(const std::string& path);

struct RunOutcome {
  int status = kExitError;
  std::vector<std::filesystem::path> written;
};

/// Executes, then writes the requested files (or prints to `out` when no path is
/// set). Status 0 on pass, 1 on invariant failure or non-convergence, 2 on
/// runtime or output errors, in which case no files are left behind.
RunOutcome run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ingham
