#include "unitfrac/decomposer.hpp"

#include <sstream>
#include <stdexcept>

namespace unitfrac {

Instance::Instance(Natural a, Natural n) : a_(std::move(a)), n_(std::move(n)) {
  if (a_ < Natural(2)) throw std::invalid_argument("numerator a must be >= 2, got " + a_.str());
  if (n_ < Natural(2)) throw std::invalid_argument("denominator n must be >= 2, got " + n_.str());
}

Triple::Triple(Natural x, Natural y, Natural z) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  if (x_.is_zero() || y_.is_zero() || z_.is_zero()) {
    throw std::invalid_argument("unit fraction denominators must be >= 1");
  }
  if (z_ < y_) std::swap(y_, z_);
}

std::string_view to_string(Route r) {
  switch (r) {
    case Route::Trivial: return "trivial";
    case Route::FormulaOne: return "formula-one";
    case Route::FormulaTwo: return "formula-two";
    case Route::Vieta: return "vieta";
  }
  return "?";
}

std::optional<Route> parse_route(std::string_view text) {
  for (Route r : {Route::Trivial, Route::FormulaOne, Route::FormulaTwo, Route::Vieta}) {
    if (text == to_string(r)) return r;
  }
  return std::nullopt;
}

namespace {

bool divides(const Integer& d, const Integer& v) { return !d.is_zero() && v % d == 0; }

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("certificate rejected: ") + what);
}

}  // namespace

Certificate Certificate::make(Instance inst, Triple triple, Route route, std::optional<Natural> t,
                              std::optional<Natural> q, std::optional<Rational> k) {
  require(triple.sum() == inst.fraction(), "1/x + 1/y + 1/z != a/n");
  const Integer d = inst.offset(triple.x());
  const Integer two_nx = 2 * inst.n().value() * triple.x().value();
  switch (route) {
    case Route::Trivial:
      require(inst.a() > Natural(2) && triple.y() == inst.n() && triple.z() == inst.n(),
              "trivial route needs y = z = n");
      break;
    case Route::FormulaOne:
      require(d >= 2 && divides(d - 1, two_nx) && divides(d + 1, two_nx),
              "formula-one divisibility fails");
      break;
    case Route::FormulaTwo:
      require(t && q, "formula-two needs t and q witnesses");
      require(q_poly(inst, triple.x(), *t) == q->value() * q->value(), "q^2 != q_poly(x, t)");
      require(triple.y().value() == t->value() * d - q->value() &&
                  triple.z().value() == t->value() * d + q->value(),
              "formula-two needs y, z = tD -+ q");
      break;
    case Route::Vieta:
      require(t.has_value(), "vieta route needs a t witness");
      require(triple.y().value() + triple.z().value() == d * t->value() &&
                  triple.y().value() * triple.z().value() ==
                      inst.n().value() * triple.x().value() * t->value(),
              "vieta sum/product mismatch");
      break;
  }
  return Certificate(std::move(inst), std::move(triple), route, std::move(t), std::move(q), std::move(k));
}

std::string Certificate::describe() const {
  std::ostringstream os;
  os << inst_.a() << "/" << inst_.n() << " = 1/" << triple_.x() << " + 1/" << triple_.y() << " + 1/"
     << triple_.z() << "  [" << to_string(route_);
  if (t_) os << ", t=" << *t_;
  if (q_) os << ", q=" << *q_;
  if (k_) os << ", k=" << *k_;
  os << "]";
  return os.str();
}

Verdict verify_decomposition(const Instance& inst, const Triple& triple) {
  Rational lhs = inst.fraction();
  Rational rhs = triple.sum();
  bool holds = lhs == rhs;
  return {holds, std::move(lhs), std::move(rhs)};
}

std::optional<Certificate> trivial_decompose(const Instance& inst) {
  if (inst.a() <= Natural(2)) return std::nullopt;
  Natural divisor(Integer(inst.a().value() - 2));
  if (!(inst.n() % divisor).is_zero()) return std::nullopt;
  return Certificate::make(inst, Triple(inst.n() / divisor, inst.n(), inst.n()), Route::Trivial);
}

std::optional<Certificate> formula_one_at(const Instance& inst, const Natural& x) {
  if (x.is_zero()) return std::nullopt;
  const Integer d = inst.offset(x);
  if (d < 2) return std::nullopt;
  const Integer two_nx = 2 * inst.n().value() * x.value();
  const Integer lo = d - 1;
  const Integer hi = d + 1;
  if (two_nx % lo != 0 || two_nx % hi != 0) return std::nullopt;
  Triple triple(x, Natural(Integer(two_nx / hi)), Natural(Integer(two_nx / lo)));
  return Certificate::make(inst, std::move(triple), Route::FormulaOne, std::nullopt, std::nullopt,
                           Rational(two_nx, lo * hi));
}

Integer q_poly(const Instance& inst, const Natural& x, const Natural& t) {
  const Integer d = inst.offset(x);
  const Integer td = t.value() * d;
  return td * td - 2 * inst.n().value() * t.value() * x.value();
}

std::optional<Certificate> formula_two_at(const Instance& inst, const Natural& x, const Natural& t) {
  if (x.is_zero() || t.is_zero()) return std::nullopt;
  const Integer d = inst.offset(x);
  if (d < 1) return std::nullopt;
  const Integer v = q_poly(inst, x, t);
  if (v.sign() < 0) return std::nullopt;
  auto q = perfect_square_root(Natural(v));
  if (!q) return std::nullopt;
  const Integer td = t.value() * d;
  if (td - q->value() <= 0) return std::nullopt;
  Triple triple(x, Natural(Integer(td - q->value())), Natural(Integer(td + q->value())));
  return Certificate::make(inst, std::move(triple), Route::FormulaTwo, t, std::move(q));
}

std::optional<std::pair<Natural, Natural>> vieta_solve(const Natural& sum, const Natural& product) {
  if (sum.is_zero() || product.is_zero()) return std::nullopt;
  auto small_s = sum.to_u64();
  auto small_p = product.to_u64();
  if (small_s && small_p && *small_s < (std::uint64_t{1} << 31)) {
    const std::uint64_t s = *small_s;
    const std::uint64_t p = *small_p;
    if (p > s * s / 4) return std::nullopt;
    const std::uint64_t disc = s * s - 4 * p;
    const std::uint64_t r = isqrt_u64(disc);
    if (r * r != disc || ((s - r) & 1) != 0 || s == r) return std::nullopt;
    return std::make_pair(Natural((s - r) / 2), Natural((s + r) / 2));
  }
  const Integer& s = sum.value();
  const Integer disc = s * s - 4 * product.value();
  if (disc.sign() < 0) return std::nullopt;
  auto r = perfect_square_root(Natural(disc));
  if (!r) return std::nullopt;
  const Integer lo = s - r->value();
  if (lo <= 0 || (lo & 1) != 0) return std::nullopt;
  return std::make_pair(Natural(Integer(lo / 2)), Natural(Integer((s + r->value()) / 2)));
}

std::optional<Certificate> explore_t_param(const Instance& inst, const Natural& x, const Natural& t) {
  if (x.is_zero() || t.is_zero()) return std::nullopt;
  const Integer d = inst.offset(x);
  if (d < 1) return std::nullopt;
  Natural sum(Integer(d * t.value()));
  Natural product = inst.n() * x * t;
  auto roots = vieta_solve(sum, product);
  if (!roots) return std::nullopt;
  return Certificate::make(inst, Triple(x, roots->first, roots->second), Route::Vieta, t);
}

namespace {

// Smallest integer strictly greater than v.
Integer next_integer_above(const Rational& v) { return v.floor() + 1; }
// Largest integer strictly less than v.
Integer prev_integer_below(const Rational& v) { return v.ceil() - 1; }

}  // namespace

BoundInterval delta_positive_bounds(const Instance& inst, const Natural& t) {
  if (t.is_zero()) throw std::invalid_argument("delta_positive_bounds: t must be >= 1");
  // Roots of t a^2 x^2 - 2n(at + 1) x + t n^2: (A -+ sqrt(B)) / C.
  const Integer& a = inst.a().value();
  const Integer& n = inst.n().value();
  const Integer at = a * t.value();
  const Integer big_a = n * (at + 1);
  const Integer big_b = n * n * (2 * at + 1);
  const Integer big_c = a * a * t.value();

  if (auto root = perfect_square_root(Natural(big_b))) {
    return {Rational(big_a - root->value(), big_c), Rational(big_a + root->value(), big_c), true};
  }

  // sqrt(B) is irrational, so neither root is an integer. Tighten a dyadic
  // bracket of sqrt(B) until no integer separates each cut from its root.
  for (unsigned bits = 0;; bits += 16) {
    const Integer scale = Integer(1) << bits;
    const Integer b_floor = isqrt(Natural(Integer(big_b << (2 * bits)))).value();
    const Rational sqrt_lo(b_floor, scale);
    const Rational sqrt_hi(b_floor + 1, scale);
    const Rational left_lo = (Rational(big_a) - sqrt_hi) / Rational(big_c);
    const Rational left_hi = (Rational(big_a) - sqrt_lo) / Rational(big_c);
    const Rational right_lo = (Rational(big_a) + sqrt_lo) / Rational(big_c);
    const Rational right_hi = (Rational(big_a) + sqrt_hi) / Rational(big_c);
    // Cuts that are themselves integers would blur the strict/closed boundary.
    bool left_ok = Rational(prev_integer_below(left_hi)) <= left_lo && !left_hi.is_integer();
    bool right_ok = Rational(next_integer_above(right_lo)) >= right_hi && !right_lo.is_integer();
    if (left_ok && right_ok) return {left_hi, right_lo, false};
  }
}

}  // namespace unitfrac
