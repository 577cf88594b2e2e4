#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "catbreed/coherent.hpp"
#include "catbreed/error.hpp"

namespace catbreed::config {

using KeyValues = std::map<std::string, std::string>;

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Flat `key = value` lines. '#' starts a comment; blank lines are skipped.
/// Keys may be written with or without a leading "--".
inline KeyValues parse(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string_view key = trim(view.substr(0, eq));
    while (key.starts_with('-')) key.remove_prefix(1);
    const std::string_view value = trim(view.substr(eq + 1));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(lineno) + ": empty key");
    kv[std::string(key)] = std::string(value);
  }
  return kv;
}

inline double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InvalidArgument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

/// Coupling lengths are given in units of pi ("0.14" means 0.14 pi). A "rad"
/// suffix takes the number as-is; a "pi" suffix is accepted for clarity.
inline double parse_z(std::string_view s) {
  s = trim(s);
  if (s.ends_with("rad")) return parse_double(s.substr(0, s.size() - 3));
  if (s.ends_with("pi")) s.remove_suffix(2);
  return parse_double(s) * std::numbers::pi;
}

inline Parity parse_parity(std::string_view s) {
  s = trim(s);
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw InvalidArgument("parity must be 'even' or 'odd', got '" + std::string(s) + "'");
}

}  // namespace catbreed::config
