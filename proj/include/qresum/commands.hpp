#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qresum/report_io.hpp"

namespace qresum {

enum class Command { Eval, Verify, Scan };

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parsed command line. Numeric fields are already validated.
struct CommandOptions {
  Command command = Command::Eval;
  /// Expression for eval, identity suite for verify, limit name for scan.
  std::string subject;
  std::optional<Real> tol;
  int max_terms = 0;
  std::optional<Complex> lambda;
  int jobs = 1;
  /// verify: "default" or "random:N[:seed]".
  std::string grid = "default";
  /// scan: "default", "k=a..b" or "q=v1,v2,...".
  std::string schedule = "default";
  std::optional<Real> alpha;
  std::optional<Real> beta;
  std::optional<Complex> x;
  std::optional<Complex> z;
};

/// Names accepted by `scan`.
const std::vector<std::string>& scan_names();

/// Runs one command. Usage and domain errors propagate as Error; failed
/// identities or scans are recorded in the report.
Report run_command(const CommandOptions& opts);

/// 0 when every entry passed, 1 otherwise.
int exit_code(const Report& report);

/// Full command line: `eval EXPR`, `verify IDENTITY --grid SPEC`,
/// `scan LIMIT --schedule SPEC`, plus --tol, --max-terms, --lambda,
/// --format {json,csv}, --out PATH, --jobs N and the scan parameters
/// --alpha, --beta, --x, --z. The report goes to `out` unless --out is
/// given; diagnostics go to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qresum
