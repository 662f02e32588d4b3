#pragma once

// Exact integer and rational kernel shared by every other module.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace unitfrac {

using Integer = boost::multiprecision::cpp_int;
using u128 = unsigned __int128;
using i128 = __int128;

/// Non-negative arbitrary-precision integer.
class Natural {
 public:
  Natural() = default;

  template <std::integral T>
  Natural(T v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      if (v < 0) throw std::domain_error("Natural: negative value");
    }
  }

  explicit Natural(Integer v);

  /// Parses a plain decimal string (no sign, no separators).
  static Natural parse(std::string_view text);

  const Integer& value() const noexcept { return value_; }
  std::string str() const { return value_.str(); }
  bool is_zero() const noexcept { return value_.is_zero(); }

  /// Value as a machine word when it fits.
  std::optional<std::uint64_t> to_u64() const;
  std::uint64_t as_u64() const;  // throws std::out_of_range

  friend bool operator==(const Natural&, const Natural&) = default;
  friend std::strong_ordering operator<=>(const Natural& l, const Natural& r) {
    int c = l.value_.compare(r.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend Natural operator+(const Natural& l, const Natural& r) { return Natural(Integer(l.value_ + r.value_)); }
  friend Natural operator*(const Natural& l, const Natural& r) { return Natural(Integer(l.value_ * r.value_)); }
  friend Natural operator/(const Natural& l, const Natural& r);
  friend Natural operator%(const Natural& l, const Natural& r);

  friend std::ostream& operator<<(std::ostream& os, const Natural& v) { return os << v.value_; }

 private:
  Integer value_;
};

/// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(Integer num, Integer den);  // throws std::domain_error on den == 0
  Rational(const Integer& v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  Rational(T v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)

  const Integer& numerator() const noexcept { return num_; }
  const Integer& denominator() const noexcept { return den_; }
  bool is_integer() const { return den_ == 1; }

  /// Largest integer <= value / smallest integer >= value.
  Integer floor() const;
  Integer ceil() const;

  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& l, const Rational& r);

  friend Rational operator+(const Rational& l, const Rational& r);
  friend Rational operator-(const Rational& l, const Rational& r);
  friend Rational operator*(const Rational& l, const Rational& r);
  friend Rational operator/(const Rational& l, const Rational& r);

  friend std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

 private:
  Integer num_;
  Integer den_;
};

Integer gcd(const Integer& a, const Integer& b);

/// floor(sqrt(m)), exact at every magnitude.
Natural isqrt(const Natural& m);

/// r with r*r == m, or nothing.
std::optional<Natural> perfect_square_root(const Natural& m);

/// 1/x + 1/y + 1/z, reduced. Throws std::domain_error if any argument is zero.
Rational unit_fraction_sum(const Natural& x, const Natural& y, const Natural& z);

// Machine-word kernels used by the scan loops.
std::uint64_t isqrt_u64(std::uint64_t m) noexcept;
u128 isqrt_u128(u128 m) noexcept;

/// Cheap rejection test: false means m is certainly not a square.
bool maybe_square(u128 m) noexcept;

std::optional<u128> perfect_square_root_u128(u128 m) noexcept;

std::string to_string(u128 v);
std::string to_string(i128 v);
Integer to_integer(i128 v);
Integer to_integer(u128 v);
std::optional<u128> to_u128(const Integer& v);

}  // namespace unitfrac
