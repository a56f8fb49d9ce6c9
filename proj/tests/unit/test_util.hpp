#pragma once

#include "doctest.h"
#include "qresum/types.hpp"

namespace qresum::test {

inline Real rel(Complex a, Complex b) { return relative_error(a, b); }

// Decimal reference strings keep the oracle digits beyond double.
inline Real ref(const char* s) { return std::strtold(s, nullptr); }

}  // namespace qresum::test
