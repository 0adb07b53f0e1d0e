#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace simred {

/// Exact rational with 64-bit numerator/denominator, always reduced and den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static std::optional<Rational> make(__int128 num, __int128 den);

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A numeric constant: exact rational or IEEE double. Floats are contagious:
/// any operation touching a double yields a double. Rational overflow also
/// degrades to double.
class Number {
 public:
  Number() = default;
  Number(std::int64_t n) : value_(Rational{n, 1}) {}  // NOLINT(google-explicit-constructor)
  Number(int n) : Number(static_cast<std::int64_t>(n)) {}  // NOLINT(google-explicit-constructor)
  explicit Number(Rational r) : value_(r) {}
  explicit Number(double d) : value_(d) {}

  static Number rational(std::int64_t num, std::int64_t den);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const { return std::get<Rational>(value_); }
  double to_double() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_minus_one() const;
  bool is_negative() const;
  bool is_integer() const;

  Number operator-() const;
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b) { return a + (-b); }

  /// Multiplicative inverse. Exact zero has no inverse.
  std::optional<Number> inverse() const;

  /// base^exponent if it can be represented as a Number: exact when the base is
  /// rational and the exponent an integer (or the root is exact), float when
  /// either side is a float and the real result exists.
  static std::optional<Number> pow(const Number& base, const Number& exponent);

  /// Total order used for canonical sorting: rationals before floats, then by value.
  static int compare(const Number& a, const Number& b);

  std::string to_string() const;

  friend bool operator==(const Number& a, const Number& b) { return a.value_ == b.value_; }

 private:
  std::variant<Rational, double> value_{Rational{}};
};

}  // namespace simred
