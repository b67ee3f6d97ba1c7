#pragma once

// Locale-independent numeric formatting for the data outputs: 15
// significant digits, '.' decimal separator, so identical inputs produce
// byte-identical files.

#include <charconv>
#include <string>
#include <system_error>

namespace cylspec {

inline std::string fmt_double(double v, int significant = 15) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

}  // namespace cylspec
