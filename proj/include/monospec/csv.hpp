#pragma once

#include <array>
#include <charconv>
#include <string>

namespace monospec {

// Locale-independent decimal formatting with 17 significant digits, enough
// to round-trip any double bit-exactly.
inline std::string format_double(double value) {
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                           std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

// Shortest decimal string that round-trips; for human-facing constants.
inline std::string format_double_short(double value) {
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

}  // namespace monospec
