#ifndef LEVYGAS_FORMAT_HPP
#define LEVYGAS_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace levygas {

// Shortest decimal that round-trips a double.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Compact form for file names and labels: integers without exponent.
inline std::string fmt_compact(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace levygas

#endif
