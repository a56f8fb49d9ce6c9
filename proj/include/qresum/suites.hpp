#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qresum/borel_laplace.hpp"
#include "qresum/reports.hpp"

namespace qresum {

/// Knobs shared by every identity suite.
struct SuiteOptions {
  int jobs = 1;
  /// Overrides the suite's own tolerance.
  std::optional<Real> tol;
  /// Number of random samples for the randomized suites; 0 keeps the default.
  int samples = 0;
  std::uint64_t seed = 20240611;
  /// Overrides QContext's default term cap when positive.
  int max_terms = 0;
  /// Replaces the lambda grid of the Laplace suites when set.
  std::optional<Complex> lambda;
};

/// Suite names accepted by run_suite, in a stable order.
const std::vector<std::string>& suite_names();

/// True for suites whose grid is drawn from SuiteOptions::seed and
/// SuiteOptions::samples.
bool suite_is_randomized(const std::string& name);

/// Evaluates the named identity over its grid. Domain errors at individual
/// points are recorded as failed points; an unknown name throws
/// InvalidArgument.
std::vector<IdentityReport> run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace qresum
