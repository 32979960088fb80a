#include "bentchain/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "bentchain/errors.hpp"

namespace bentchain {
namespace {

double to_double(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::logic_error&) {
    throw ValidationError("invalid number '" + s + "' in grid");
  }
  if (used != s.size()) throw ValidationError("invalid number '" + s + "' in grid");
  return value;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  if (text.empty()) throw ValidationError("empty grid");
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
      throw ValidationError("range grid must be start:step:end");
    }
    const double start = to_double(text.substr(0, a));
    const double step = to_double(text.substr(a + 1, b - a - 1));
    const double end = to_double(text.substr(b + 1));
    if (!(step > 0.0)) throw ValidationError("grid step must be positive");
    if (end < start) throw ValidationError("grid end precedes start");
    auto count = static_cast<long>(std::floor((end - start) / step + 0.5));
    if (start + static_cast<double>(count) * step > end + 1e-9 * step) --count;
    for (long i = 0; i <= count; ++i) {
      const double v = start + static_cast<double>(i) * step;
      // Snap values within a few ulps of a short decimal (0.30000000000000004 → 0.3).
      const double rounded = std::round(v * 1e12) / 1e12;
      out.push_back(std::abs(rounded - v) < 1e-12 * std::max(1.0, std::abs(v)) ? rounded : v);
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(to_double(piece));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<int> parse_int_grid(std::string_view text) {
  std::vector<int> out;
  for (const double v : parse_grid(text)) {
    if (std::abs(v - std::round(v)) > 1e-9) throw ValidationError("integer grid has a fractional value");
    out.push_back(static_cast<int>(std::lround(v)));
  }
  return out;
}

}  // namespace bentchain
