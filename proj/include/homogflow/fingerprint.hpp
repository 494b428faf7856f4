#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace homogflow {

/// 64-bit FNV-1a of the text, as 16 hex digits.
inline std::string fingerprint(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace homogflow
