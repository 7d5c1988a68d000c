#pragma once

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace pitchkde::detail {

// Shortest decimal string that round-trips to the same double. Locale-free.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

// Scientific notation with 17 significant digits; used where the on-disk
// format promises full double precision regardless of the value.
inline std::string format_double_full(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::scientific, 16);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
  // Skip leading spaces; from_chars does not.
  std::size_t begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return std::nullopt;
  std::size_t end = s.find_last_not_of(" \t\r");
  s = s.substr(begin, end - begin + 1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::string_view trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace pitchkde::detail
