#pragma once

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace seqrac {

// 50 significant decimal digits with a binary exponent range of about
// +-2^31. Schedules for long receiver chains need omega far below the
// smallest double, and their advantage margins sit ~1e-8 below 3/4.
using WideReal = boost::multiprecision::cpp_bin_float_50;

// Digits written when a wide value is serialised as a decimal string.
inline constexpr int kWideDecimalDigits = 40;

inline std::string to_decimal(const WideReal& x) {
    return x.str(kWideDecimalDigits, std::ios_base::scientific);
}

WideReal wide_pi();

}  // namespace seqrac
