#pragma once

#include <charconv>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

namespace catbreed::csv {

/// Shortest round-trip-safe rendering used everywhere in CSV output: 17
/// significant digits, '.' separator, locale independent.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  Writer& header(std::initializer_list<std::string_view> names) {
    bool first = true;
    for (auto n : names) {
      if (!first) os_ << ',';
      os_ << n;
      first = false;
    }
    os_ << '\n';
    return *this;
  }

  Writer& field(double v) { return raw(format_double(v)); }
  Writer& field(int v) { return raw(std::to_string(v)); }
  Writer& field(std::string_view s) { return raw(s); }

  Writer& end_row() {
    os_ << '\n';
    first_ = true;
    return *this;
  }

 private:
  Writer& raw(std::string_view s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }

  std::ostream& os_;
  bool first_ = true;
};

}  // namespace catbreed::csv
