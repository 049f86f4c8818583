#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

namespace ncft {

/// A Lebesgue/Schatten exponent in [1, ∞]. Infinity is stored as IEEE +inf
/// and the endpoint conjugates 1 <-> ∞ are handled without division.
class Exponent {
 public:
  constexpr Exponent() = default;
  explicit Exponent(double value);

  static constexpr Exponent infinity() {
    Exponent e;
    e.value_ = std::numeric_limits<double>::infinity();
    return e;
  }

  double value() const { return value_; }
  bool is_infinite() const { return std::isinf(value_); }
  bool is_one() const { return value_ == 1.0; }

  /// 1/p, with 1/∞ = 0.
  double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / value_; }

  /// p' with 1/p + 1/p' = 1.
  Exponent conjugate() const;

  /// Exponent from its reciprocal; 0 maps to ∞.
  static Exponent from_reciprocal(double inv);

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.value_ == b.value_; }
  friend bool operator<(const Exponent& a, const Exponent& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Exponent& a, const Exponent& b) { return a.value_ > b.value_; }

 private:
  double value_ = 2.0;
};

/// Accepts "2", "1.5", "4/3", "inf", "∞".
Exponent parse_exponent(std::string_view text);

}  // namespace ncft
