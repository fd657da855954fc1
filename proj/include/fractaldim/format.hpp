#pragma once

#include <cstdio>
#include <string>

namespace fractaldim {

/// 15-significant-digit rendering for JSON report numbers.
inline std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// 17-significant-digit rendering for CSV data (round-trips binary64).
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace fractaldim
