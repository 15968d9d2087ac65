#include "cubenorm/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace cubenorm::io {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;  // 32 bytes always suffice for the shortest form
  return std::string(buf, ptr);
}

std::string format_double_sig(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  int len = std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return std::string(buf, buf + len);
}

}  // namespace cubenorm::io
