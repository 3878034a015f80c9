#pragma once

// Locale-independent number formatting for data files: '.' decimal separator
// and 17 significant digits, enough to round-trip any double.

#include <charconv>
#include <string>

namespace planckian {

inline std::string format_full(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string format_short(double v, int digits = 6) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace planckian
