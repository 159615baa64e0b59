#pragma once

#include <cstdint>
#include <string>

#include "bfly/errors.hpp"

namespace bfly {

// Uppercase hex with 0x prefix, e.g. 0xB.
inline std::string hex_string(std::uint64_t v) {
  static const char* digits = "0123456789ABCDEF";
  std::string s;
  do {
    s.insert(s.begin(), digits[v & 0xF]);
    v >>= 4;
  } while (v);
  return "0x" + s;
}

// Accepts 0x-prefixed hex or bare hex digits.
inline std::uint64_t parse_hex(const std::string& s) {
  std::string body = s;
  if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
  if (body.empty()) fail(errc::bad_parameters, "empty hex value");
  std::uint64_t v = 0;
  for (char c : body) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else fail(errc::bad_parameters, "bad hex value: " + s);
    if (v >> 60) fail(errc::bad_parameters, "hex value too large: " + s);
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

}  // namespace bfly
