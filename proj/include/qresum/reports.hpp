#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qresum/types.hpp"

namespace qresum {

/// One evaluated point of an identity check.
struct IdentityPoint {
  std::string params;  // "k=v;k=v"
  Complex lhs{};
  Complex rhs{};
  Real rel_err = 0.0L;
  bool pass = false;
  std::string error;  // non-empty when the point could not be evaluated
};

/// A named identity checked over a grid.
struct IdentityReport {
  std::string name;
  Real tol = 0.0L;
  std::vector<IdentityPoint> points;

  void add(std::string params, Complex lhs, Complex rhs);
  void add(std::string params, Complex lhs, Complex rhs, Real rel_err);
  void add_failure(std::string params, std::string error);
  void append(const IdentityReport& other);

  Real max_err() const;
  bool passed() const;
};

/// Complex literal in the CLI syntax: "1.5", "1.2+0.3i", "-2i".
std::string format_complex(Complex z, int digits = 17);

/// "name=value;name=value" list used as IdentityPoint::params.
std::string format_params(std::initializer_list<std::pair<const char*, Complex>> items,
                          int digits = 6);

}  // namespace qresum
