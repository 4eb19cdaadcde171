#include "dumbwaiter/numfmt.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace dumbwaiter {

std::string format_decimal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_decimal(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty decimal string");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return v;
}

}  // namespace dumbwaiter
