#include "simred/number.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace simred {

namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Exact integer k-th root of v >= 0, if one exists.
std::optional<std::int64_t> exact_root(std::int64_t v, std::int64_t k) {
  if (v < 0) return std::nullopt;
  if (v == 0 || v == 1) return v;
  auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(k))));
  for (std::int64_t cand = std::max<std::int64_t>(guess - 1, 0); cand <= guess + 1; ++cand) {
    __int128 acc = 1;
    bool overflow = false;
    for (std::int64_t i = 0; i < k; ++i) {
      acc *= cand;
      if (acc > kMax) {
        overflow = true;
        break;
      }
    }
    if (!overflow && acc == v) return cand;
  }
  return std::nullopt;
}

std::optional<Rational> rational_ipow(Rational base, std::int64_t e) {
  if (e < 0) {
    if (base.num == 0) return std::nullopt;
    auto inv = Rational::make(base.den, base.num);
    if (!inv) return std::nullopt;
    base = *inv;
    e = -e;
  }
  __int128 n = 1, d = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    n *= base.num;
    d *= base.den;
    if (abs128(n) > kMax || d > kMax) return std::nullopt;
  }
  return Rational::make(n, d);
}

}  // namespace

std::optional<Rational> Rational::make(__int128 num, __int128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (abs128(num) > kMax || den > kMax) return std::nullopt;
  return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Number Number::rational(std::int64_t num, std::int64_t den) {
  auto r = Rational::make(num, den);
  if (!r) return Number(static_cast<double>(num) / static_cast<double>(den));
  return Number(*r);
}

double Number::to_double() const {
  if (is_exact()) return exact().to_double();
  return std::get<double>(value_);
}

bool Number::is_zero() const { return is_exact() ? exact().num == 0 : std::get<double>(value_) == 0.0; }
bool Number::is_one() const { return is_exact() ? (exact().num == 1 && exact().den == 1) : std::get<double>(value_) == 1.0; }
bool Number::is_minus_one() const {
  return is_exact() ? (exact().num == -1 && exact().den == 1) : std::get<double>(value_) == -1.0;
}
bool Number::is_negative() const { return to_double() < 0.0; }
bool Number::is_integer() const {
  if (is_exact()) return exact().is_integer();
  double d = std::get<double>(value_);
  return std::isfinite(d) && std::floor(d) == d;
}

Number Number::operator-() const {
  if (is_exact()) {
    if (auto r = Rational::make(-static_cast<__int128>(exact().num), exact().den)) return Number(*r);
    return Number(-to_double());
  }
  return Number(-std::get<double>(value_));
}

Number operator+(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.exact();
    const auto& y = b.exact();
    auto r = Rational::make(static_cast<__int128>(x.num) * y.den + static_cast<__int128>(y.num) * x.den,
                            static_cast<__int128>(x.den) * y.den);
    if (r) return Number(*r);
  }
  return Number(a.to_double() + b.to_double());
}

Number operator*(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.exact();
    const auto& y = b.exact();
    auto r = Rational::make(static_cast<__int128>(x.num) * y.num, static_cast<__int128>(x.den) * y.den);
    if (r) return Number(*r);
  }
  return Number(a.to_double() * b.to_double());
}

std::optional<Number> Number::inverse() const {
  if (is_exact()) {
    if (exact().num == 0) return std::nullopt;
    if (auto r = Rational::make(exact().den, exact().num)) return Number(*r);
    return Number(1.0 / to_double());
  }
  return Number(1.0 / std::get<double>(value_));
}

std::optional<Number> Number::pow(const Number& base, const Number& exponent) {
  if (base.is_exact() && exponent.is_exact()) {
    const Rational& e = exponent.exact();
    const Rational& b = base.exact();
    if (b.num == 0 && e.num < 0) return std::nullopt;
    if (e.is_integer()) {
      if (std::llabs(e.num) > 4096) return std::nullopt;
      if (auto r = rational_ipow(b, e.num)) return Number(*r);
      return std::nullopt;
    }
    // Rational exponent p/q: exact only when both parts have exact q-th roots.
    if (e.den > 64) return std::nullopt;
    std::int64_t sign = 1;
    std::int64_t n = b.num;
    if (n < 0) {
      if (e.den % 2 == 0) return std::nullopt;
      sign = -1;
      n = -n;
    }
    auto rn = exact_root(n, e.den);
    auto rd = exact_root(b.den, e.den);
    if (!rn || !rd) return std::nullopt;
    auto root = Rational::make(static_cast<__int128>(sign) * *rn, *rd);
    if (!root) return std::nullopt;
    return pow(Number(*root), Number(e.num));
  }
  double b = base.to_double();
  double e = exponent.to_double();
  if (b == 0.0 && e < 0.0) return std::nullopt;
  if (b < 0.0 && std::floor(e) != e) return std::nullopt;
  double r = std::pow(b, e);
  if (!std::isfinite(r)) return std::nullopt;
  return Number(r);
}

int Number::compare(const Number& a, const Number& b) {
  if (a.is_exact() != b.is_exact()) return a.is_exact() ? -1 : 1;
  if (a.is_exact()) {
    __int128 lhs = static_cast<__int128>(a.exact().num) * b.exact().den;
    __int128 rhs = static_cast<__int128>(b.exact().num) * a.exact().den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  double x = a.to_double();
  double y = b.to_double();
  return x < y ? -1 : (x > y ? 1 : 0);
}

std::string Number::to_string() const {
  if (is_exact()) {
    const auto& r = exact();
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
  std::string s(buf);
  // Keep floats lexically distinct from integers so they reparse as floats.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace simred
