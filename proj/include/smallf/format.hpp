#pragma once

#include <charconv>
#include <string>

namespace smallf {

/// Shortest decimal that round-trips to the same double.
inline std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Fixed number of significant digits, for human-facing tables.
inline std::string fmt_sig(double v, int digits) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace smallf
