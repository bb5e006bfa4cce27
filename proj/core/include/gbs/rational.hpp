#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gbs {

/// Exact arbitrary-precision fraction, always in lowest terms.
///
/// A thin value wrapper over GMP's mpq_class. Text form is `num/den`
/// (denominator always printed, including `/1`).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT: implicit from integers
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Parses `n`, `n/d` or `-n/d`. Throws gbs::Error on malformed text or zero denominator.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return value_; }

  Rational floor() const;
  Rational ceil() const;
  bool is_integer() const;
  /// Integer value; throws if not an integer or out of `long` range.
  long to_long() const;
  double to_double() const { return value_.get_d(); }

  /// Exact power; negative exponents invert (throws on 0^negative).
  Rational pow(long exponent) const;

  std::string numerator_string() const;
  std::string denominator_string() const;
  std::string to_string() const;

  int sign() const { return sgn(value_); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// True when every prime factor of the denominator is 2 or 3.
bool denominator_is_6_smooth(const Rational& r);

}  // namespace gbs

template <>
struct std::hash<gbs::Rational> {
  std::size_t operator()(const gbs::Rational& r) const noexcept { return r.hash(); }
};
