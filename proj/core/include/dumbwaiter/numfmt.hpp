#pragma once

#include <string>
#include <string_view>

namespace dumbwaiter {

/// 17 significant digits ("%.17g"), enough for any double to round-trip.
/// Non-finite values print as "inf", "-inf" or "nan".
std::string format_decimal(double value);

/// Strict inverse of format_decimal: the whole string must be consumed.
/// Throws std::invalid_argument.
double parse_decimal(std::string_view text);

}  // namespace dumbwaiter
