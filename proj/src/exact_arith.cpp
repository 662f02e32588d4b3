#include "unitfrac/exact_arith.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>

namespace unitfrac {

namespace mp = boost::multiprecision;

Natural::Natural(Integer v) : value_(std::move(v)) {
  if (value_.sign() < 0) throw std::domain_error("Natural: negative value");
}

Natural Natural::parse(std::string_view text) {
  if (text.empty() || text.size() > 4096 ||
      !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::invalid_argument("not a non-negative decimal integer: '" + std::string(text) + "'");
  }
  // cpp_int reads a leading 0 as an octal prefix.
  auto first = text.find_first_not_of('0');
  if (first == std::string_view::npos) return Natural(0);
  return Natural(Integer(std::string(text.substr(first))));
}

std::optional<std::uint64_t> Natural::to_u64() const {
  if (value_ > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return value_.convert_to<std::uint64_t>();
}

std::uint64_t Natural::as_u64() const {
  auto v = to_u64();
  if (!v) throw std::out_of_range("value " + str() + " exceeds 64 bits");
  return *v;
}

Natural operator/(const Natural& l, const Natural& r) {
  if (r.is_zero()) throw std::domain_error("Natural: division by zero");
  return Natural(Integer(l.value_ / r.value_));
}

Natural operator%(const Natural& l, const Natural& r) {
  if (r.is_zero()) throw std::domain_error("Natural: division by zero");
  return Natural(Integer(l.value_ % r.value_));
}

Integer gcd(const Integer& a, const Integer& b) { return mp::gcd(a, b); }

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Integer g = mp::gcd(mp::abs(num_), den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Integer Rational::floor() const {
  Integer q, r;
  mp::divide_qr(num_, den_, q, r);  // truncates toward zero
  if (r.sign() < 0) --q;
  return q;
}

Integer Rational::ceil() const {
  Integer q, r;
  mp::divide_qr(num_, den_, q, r);
  if (r.sign() > 0) ++q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::strong_ordering operator<=>(const Rational& l, const Rational& r) {
  int c = Integer(l.num_ * r.den_).compare(Integer(r.num_ * l.den_));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational operator+(const Rational& l, const Rational& r) {
  return Rational(l.num_ * r.den_ + r.num_ * l.den_, l.den_ * r.den_);
}

Rational operator-(const Rational& l, const Rational& r) {
  return Rational(l.num_ * r.den_ - r.num_ * l.den_, l.den_ * r.den_);
}

Rational operator*(const Rational& l, const Rational& r) {
  return Rational(l.num_ * r.num_, l.den_ * r.den_);
}

Rational operator/(const Rational& l, const Rational& r) {
  if (r.num_.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(l.num_ * r.den_, l.den_ * r.num_);
}

Natural isqrt(const Natural& m) {
  const Integer& v = m.value();
  if (v < 2) return m;
  // Newton from above: 2^(ceil(bits/2)) >= sqrt(v).
  unsigned bits = mp::msb(v) + 1;
  Integer x = Integer(1) << ((bits + 1) / 2);
  for (;;) {
    Integer next = (x + v / x) >> 1;
    if (next >= x) break;
    x = std::move(next);
  }
  return Natural(std::move(x));
}

std::optional<Natural> perfect_square_root(const Natural& m) {
  Natural r = isqrt(m);
  if (r * r == m) return r;
  return std::nullopt;
}

Rational unit_fraction_sum(const Natural& x, const Natural& y, const Natural& z) {
  if (x.is_zero() || y.is_zero() || z.is_zero()) {
    throw std::domain_error("unit_fraction_sum: zero denominator");
  }
  const Integer& a = x.value();
  const Integer& b = y.value();
  const Integer& c = z.value();
  return Rational(b * c + a * c + a * b, a * b * c);
}

std::uint64_t isqrt_u64(std::uint64_t m) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
  r = std::min<std::uint64_t>(r, 0xFFFFFFFFull);
  while (r * r > m) --r;
  while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= m) ++r;
  return r;
}

u128 isqrt_u128(u128 m) noexcept {
  if (m <= std::numeric_limits<std::uint64_t>::max()) return isqrt_u64(static_cast<std::uint64_t>(m));
  constexpr u128 kMaxRoot = std::numeric_limits<std::uint64_t>::max();
  auto est = static_cast<long double>(m);
  u128 r = static_cast<u128>(std::sqrt(est));
  if (r > kMaxRoot) r = kMaxRoot;
  // One Newton step brings the long double estimate to within one unit.
  r = (r + m / r) >> 1;
  if (r > kMaxRoot) r = kMaxRoot;
  while (r * r > m) --r;
  while (r < kMaxRoot && (r + 1) * (r + 1) <= m) ++r;
  return r;
}

namespace {

template <unsigned M>
constexpr std::array<bool, M> square_residues() {
  std::array<bool, M> table{};
  for (unsigned i = 0; i < M; ++i) table[(i * i) % M] = true;
  return table;
}

constexpr auto kSq64 = square_residues<64>();
constexpr auto kSq63 = square_residues<63>();
constexpr auto kSq65 = square_residues<65>();
constexpr auto kSq11 = square_residues<11>();

}  // namespace

bool maybe_square(u128 m) noexcept {
  if (!kSq64[static_cast<unsigned>(m & 63u)]) return false;
  auto r = static_cast<unsigned>(m % 45045u);  // 63 * 65 * 11
  return kSq63[r % 63] && kSq65[r % 65] && kSq11[r % 11];
}

std::optional<u128> perfect_square_root_u128(u128 m) noexcept {
  if (!maybe_square(m)) return std::nullopt;
  u128 r = isqrt_u128(m);
  if (r * r == m) return r;
  return std::nullopt;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string(i128 v) {
  if (v >= 0) return to_string(static_cast<u128>(v));
  return "-" + to_string(static_cast<u128>(0) - static_cast<u128>(v));
}

Integer to_integer(u128 v) {
  Integer hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | Integer(static_cast<std::uint64_t>(v));
}

std::optional<u128> to_u128(const Integer& v) {
  if (v.is_zero()) return u128{0};
  if (v.sign() < 0 || mp::msb(v) >= 128) return std::nullopt;
  const Integer mask = (Integer(1) << 64) - 1;
  auto lo = static_cast<std::uint64_t>(Integer(v & mask));
  auto hi = static_cast<std::uint64_t>(Integer(v >> 64));
  return (static_cast<u128>(hi) << 64) | lo;
}

Integer to_integer(i128 v) {
  if (v >= 0) return to_integer(static_cast<u128>(v));
  return -to_integer(static_cast<u128>(0) - static_cast<u128>(v));
}

}  // namespace unitfrac
