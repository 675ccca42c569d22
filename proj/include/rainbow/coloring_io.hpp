#ifndef RAINBOW_COLORING_IO_HPP
#define RAINBOW_COLORING_IO_HPP

#include "rainbow/coloring.hpp"
#include "rainbow/error.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace rainbow {

// Text format:
//
//   n=<n> r=<r>
//   <c(1)> <c(2)> ... <c(n)>
//
// with 1-based colors in position order.

inline void write_coloring(std::ostream& os, const Coloring& c) {
  os << "n=" << c.n() << " r=" << c.colors() << '\n';
  const auto a = c.assignment();
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << (i ? " " : "") << (a[i] + 1);
  }
  os << '\n';
}

inline std::string format_coloring(const Coloring& c) {
  std::ostringstream os;
  write_coloring(os, c);
  return os.str();
}

namespace detail {

inline long long parse_int(std::string_view token, std::string_view what) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw parse_error("expected an integer for " + std::string(what) + ", got '" + std::string(token) + "'");
  }
  return value;
}

inline long long parse_header_field(const std::string& token, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw parse_error("header must be 'n=<n> r=<r>', got '" + token + "'");
  }
  return parse_int(std::string_view(token).substr(prefix.size()), key);
}

} // namespace detail

/// Parses and validates a coloring. Throws parse_error naming the violated rule.
inline Coloring read_coloring(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) {
    throw parse_error("empty coloring file: missing 'n=<n> r=<r>' header");
  }
  std::istringstream hs(header);
  std::string nf, rf, extra;
  if (!(hs >> nf >> rf) || (hs >> extra)) {
    throw parse_error("header must be exactly 'n=<n> r=<r>', got '" + header + "'");
  }
  const long long n = detail::parse_header_field(nf, "n");
  const long long r = detail::parse_header_field(rf, "r");
  if (n < 1) {
    throw parse_error("n must be >= 1, got " + std::to_string(n));
  }
  if (r < 1 || r > n) {
    throw parse_error("r must be in [1, n], got r=" + std::to_string(r));
  }

  std::vector<Color> labels;
  labels.reserve(static_cast<std::size_t>(n));
  std::string token;
  while (is >> token) {
    const long long v = detail::parse_int(token, "color");
    if (v < 1 || v > r) {
      throw parse_error("color " + token + " at position " + std::to_string(labels.size() + 1) +
                        " outside [1, r=" + std::to_string(r) + "]");
    }
    labels.push_back(static_cast<Color>(v));
  }
  if (static_cast<long long>(labels.size()) != n) {
    throw parse_error("expected n=" + std::to_string(n) + " colors, found " + std::to_string(labels.size()));
  }

  std::vector<bool> used(static_cast<std::size_t>(r), false);
  for (Color c : labels) {
    used[c - 1] = true;
  }
  for (long long c = 0; c < r; ++c) {
    if (!used[static_cast<std::size_t>(c)]) {
      throw parse_error("coloring is not exact (onto): color " + std::to_string(c + 1) + " of r=" +
                        std::to_string(r) + " is never used");
    }
  }
  return Coloring::from_one_based(labels);
}

inline Coloring parse_coloring(const std::string& text) {
  std::istringstream is(text);
  return read_coloring(is);
}

} // namespace rainbow

#endif // RAINBOW_COLORING_IO_HPP
