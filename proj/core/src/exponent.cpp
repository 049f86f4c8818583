#include "ncft/exponent.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ncft/error.hpp"

namespace ncft {

Exponent::Exponent(double value) : value_(value) {
  require(!std::isnan(value) && value >= 1.0, ErrorCode::PreconditionFailed,
          "exponent must lie in [1, inf], got " + std::to_string(value));
}

Exponent Exponent::conjugate() const {
  if (is_infinite()) return Exponent(1.0);
  if (value_ == 1.0) return infinity();
  return Exponent(value_ / (value_ - 1.0));
}

Exponent Exponent::from_reciprocal(double inv) {
  require(inv >= 0.0 && inv <= 1.0, ErrorCode::PreconditionFailed, "reciprocal exponent out of [0,1]");
  if (inv == 0.0) return infinity();
  return Exponent(std::max(1.0, 1.0 / inv));
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

namespace {

double parse_double(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  require(end != s.c_str() && *end == '\0', ErrorCode::ParseError, "not a number: '" + s + "'");
  return v;
}

}  // namespace

Exponent parse_exponent(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity" || text == "∞") {
    return Exponent::infinity();
  }
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_double(text.substr(0, slash));
    const double den = parse_double(text.substr(slash + 1));
    require(den != 0.0, ErrorCode::ParseError, "zero denominator in exponent");
    return Exponent(num / den);
  }
  return Exponent(parse_double(text));
}

}  // namespace ncft
