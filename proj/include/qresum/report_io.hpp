#pragma once

#include <string>
#include <vector>

#include "qresum/limits.hpp"
#include "qresum/reports.hpp"

namespace qresum {

/// One evaluated expression.
struct Evaluation {
  std::string expression;  // canonical form
  Complex value{};
  Real log_scale = 0.0L;
  Real err_estimate = 0.0L;
  int terms_pos = 0;
  int terms_neg = 0;
  bool pass = true;
  std::string note;
};

inline constexpr const char* kReportSchema = "qresum-report/1";

/// Everything a command produced.
struct Report {
  std::string schema = kReportSchema;
  std::string command;
  std::string subject;
  std::vector<IdentityReport> identities;
  std::vector<LimitReport> limits;
  std::vector<Evaluation> evaluations;

  bool passed() const;
};

/// Reals are written as shortest round-trip doubles, so
/// to_json(parse_report_json(text)) == text for any text to_json produced.
/// Non-finite reals are written as the strings "inf", "-inf", "nan".
std::string to_json(const Report& report, int indent = 2);
/// Throws InvalidArgument on malformed input or a schema mismatch.
Report parse_report_json(const std::string& text);

/// One section per non-empty entry kind, separated by a blank line:
///   identity,<point params...>,lhs,rhs,rel_err,pass
///   limit,params,q,value,target,rel_err,identity_err,pass
///   expression,value,log_scale,err_estimate,terms_pos,terms_neg,pass
/// The limit section ends each scan with a q=extrapolated row.
std::string to_csv(const Report& report);

bool operator==(const IdentityPoint& a, const IdentityPoint& b);
bool operator==(const IdentityReport& a, const IdentityReport& b);
bool operator==(const LimitReport& a, const LimitReport& b);
bool operator==(const Evaluation& a, const Evaluation& b);
bool operator==(const Report& a, const Report& b);

}  // namespace qresum
