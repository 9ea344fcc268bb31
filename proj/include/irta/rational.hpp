#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace irta {

// Exact nonnegative rational, stored reduced (gcd(num, den) = 1, den > 0).
// Arithmetic runs through 128-bit intermediates; a reduced result that no
// longer fits into int64 throws std::overflow_error. Negative results are
// outside the domain and throw std::domain_error.
class Rational {
public:
  constexpr Rational() = default;

  Rational(std::int64_t value) : num_(value), den_(1) {
    if (value < 0) throw std::domain_error("Rational: negative value");
  }

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if ((num < 0) != (den < 0) && num != 0)
      throw std::domain_error("Rational: negative value");
    if (num < 0) num = -num;
    if (den < 0) den = -den;
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  // Integral part; the value is nonnegative so truncation is floor.
  std::int64_t floor() const { return num_ / den_; }

  Rational frac() const { return Rational(num_ % den_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    const i128 num = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    if (num < 0) throw std::domain_error("Rational: negative difference");
    return make(num, i128(a.den_) * b.den_);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;

  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const i128 lhs = i128(a.num_) * b.den_;
    const i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "7" for integers, "7/2" otherwise.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "3", "3/4" and decimals like "0.25".
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

private:
  using i128 = __int128;

  static Rational make(i128 num, i128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr i128 max64 = INT64_MAX;
    if (num > max64 || den > max64)
      throw std::overflow_error("Rational: value exceeds 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational");

  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw ParseError("malformed rational: '" + std::string(text) + "'");
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9')
        throw ParseError("malformed rational: '" + std::string(text) + "'");
      if (v > (INT64_MAX - (c - '0')) / 10)
        throw std::overflow_error("rational literal exceeds 64-bit range");
      v = v * 10 + (c - '0');
    }
    return v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(trim(text.substr(0, slash)));
    const std::int64_t den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view fractional = text.substr(dot + 1);
    if (fractional.empty() || fractional.size() > 18)
      throw ParseError("malformed decimal: '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fractional.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    const std::int64_t f = parse_int(fractional);
    if (w > (INT64_MAX - f) / den)
      throw std::overflow_error("rational literal exceeds 64-bit range");
    return Rational(w * den + f, den);
  }
  return Rational(parse_int(text));
}

inline Rational half() { return Rational(1, 2); }

}  // namespace irta
