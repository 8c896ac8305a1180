#pragma once

#include <cstdio>
#include <string>

namespace ladder {

/// Fixed output format for reals: 17 significant digits, lowercase exponent.
/// Identical inputs produce identical bytes.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

}  // namespace ladder
