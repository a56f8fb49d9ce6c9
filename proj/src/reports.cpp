#include "qresum/reports.hpp"

#include <algorithm>
#include <cstdio>

namespace qresum {

namespace {

std::string format_real(Real v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
  return buf;
}

}  // namespace

void IdentityReport::add(std::string params, Complex lhs, Complex rhs) {
  add(std::move(params), lhs, rhs, relative_error(lhs, rhs));
}

void IdentityReport::add(std::string params, Complex lhs, Complex rhs, Real rel_err) {
  IdentityPoint p;
  p.params = std::move(params);
  p.lhs = lhs;
  p.rhs = rhs;
  p.rel_err = rel_err;
  p.pass = std::isfinite(rel_err) && rel_err < tol;
  points.push_back(std::move(p));
}

void IdentityReport::add_failure(std::string params, std::string error) {
  IdentityPoint p;
  p.params = std::move(params);
  p.rel_err = std::numeric_limits<Real>::infinity();
  p.pass = false;
  p.error = std::move(error);
  points.push_back(std::move(p));
}

void IdentityReport::append(const IdentityReport& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
}

Real IdentityReport::max_err() const {
  Real m = 0.0L;
  for (const auto& p : points) m = std::max(m, p.rel_err);
  return m;
}

bool IdentityReport::passed() const {
  return !points.empty() &&
         std::all_of(points.begin(), points.end(), [](const IdentityPoint& p) { return p.pass; });
}

std::string format_complex(Complex z, int digits) {
  const Real re = z.real();
  const Real im = z.imag();
  if (im == 0.0L) return format_real(re, digits);
  const std::string im_part = format_real(std::abs(im), digits) + "i";
  if (re == 0.0L) return (im < 0.0L ? "-" : "") + im_part;
  return format_real(re, digits) + (im < 0.0L ? "-" : "+") + im_part;
}

std::string format_params(std::initializer_list<std::pair<const char*, Complex>> items,
                          int digits) {
  std::string out;
  for (const auto& [name, value] : items) {
    if (!out.empty()) out += ';';
    out += name;
    out += '=';
    out += format_complex(value, digits);
  }
  return out;
}

}  // namespace qresum
