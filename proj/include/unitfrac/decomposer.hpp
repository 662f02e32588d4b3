#pragma once

// Certificates for a/n = 1/x + 1/y + 1/z and the algebra that produces them.

#include "unitfrac/exact_arith.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace unitfrac {

/// The target fraction a/n. Requires a >= 2 and n >= 2.
class Instance {
 public:
  Instance(Natural a, Natural n);

  const Natural& a() const noexcept { return a_; }
  const Natural& n() const noexcept { return n_; }
  Rational fraction() const { return Rational(a_.value(), n_.value()); }

  /// The conjectures are stated for numerators a >= 4.
  bool in_conjecture_regime() const { return a_ >= Natural(4); }

  /// a*x - n, possibly negative.
  Integer offset(const Natural& x) const { return a_.value() * x.value() - n_.value(); }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Natural a_;
  Natural n_;
};

/// Denominators (x, y, z), all >= 1, stored with y <= z.
class Triple {
 public:
  Triple(Natural x, Natural y, Natural z);

  const Natural& x() const noexcept { return x_; }
  const Natural& y() const noexcept { return y_; }
  const Natural& z() const noexcept { return z_; }

  Rational sum() const { return unit_fraction_sum(x_, y_, z_); }

  friend bool operator==(const Triple&, const Triple&) = default;

 private:
  Natural x_;
  Natural y_;
  Natural z_;
};

enum class Route { Trivial, FormulaOne, FormulaTwo, Vieta };

std::string_view to_string(Route r);
std::optional<Route> parse_route(std::string_view text);

/// A decomposition proved by exact arithmetic. Only obtainable through
/// Certificate::make, which rejects anything that does not verify.
class Certificate {
 public:
  /// Throws std::logic_error when the triple does not sum to a/n or the
  /// route-specific witnesses are inconsistent.
  static Certificate make(Instance inst, Triple triple, Route route,
                          std::optional<Natural> t = std::nullopt,
                          std::optional<Natural> q = std::nullopt,
                          std::optional<Rational> k = std::nullopt);

  const Instance& instance() const noexcept { return inst_; }
  const Triple& triple() const noexcept { return triple_; }
  Route route() const noexcept { return route_; }
  const std::optional<Natural>& witness_t() const noexcept { return t_; }
  const std::optional<Natural>& witness_q() const noexcept { return q_; }
  const std::optional<Rational>& witness_k() const noexcept { return k_; }

  std::string describe() const;

  friend bool operator==(const Certificate&, const Certificate&) = default;

 private:
  Certificate(Instance inst, Triple triple, Route route, std::optional<Natural> t,
              std::optional<Natural> q, std::optional<Rational> k)
      : inst_(std::move(inst)), triple_(std::move(triple)), route_(route),
        t_(std::move(t)), q_(std::move(q)), k_(std::move(k)) {}

  Instance inst_;
  Triple triple_;
  Route route_;
  std::optional<Natural> t_;
  std::optional<Natural> q_;
  std::optional<Rational> k_;
};

struct Verdict {
  bool holds;
  Rational lhs;  // a/n
  Rational rhs;  // 1/x + 1/y + 1/z
};

/// Cut points of the region where q_poly > 0: positive for integer x below
/// left_cut or above right_cut, negative strictly between. exact is set when
/// both cuts are the true real roots; otherwise no cut is an integer.
struct BoundInterval {
  Rational left_cut;
  Rational right_cut;
  bool exact;
};

Verdict verify_decomposition(const Instance& inst, const Triple& triple);

/// x = n/(a-2), y = z = n when (a-2) | n. Absent for a = 2.
std::optional<Certificate> trivial_decompose(const Instance& inst);

/// Divisibility certificate at fixed x: with D = ax - n >= 2, needs both
/// (D-1) | 2nx and (D+1) | 2nx; then {y, z} = {2nx/(D+1), 2nx/(D-1)}.
std::optional<Certificate> formula_one_at(const Instance& inst, const Natural& x);

/// Perfect-square certificate at fixed (x, t): q^2 = q_poly(x, t),
/// y = tD - q, z = tD + q.
std::optional<Certificate> formula_two_at(const Instance& inst, const Natural& x, const Natural& t);

/// t^2 (ax - n)^2 - 2ntx.
Integer q_poly(const Instance& inst, const Natural& x, const Natural& t);

/// Positive integers y <= z with y + z = sum and y * z = product.
std::optional<std::pair<Natural, Natural>> vieta_solve(const Natural& sum, const Natural& product);

/// Single-parameter family: y + z = (ax - n) t, y z = n x t.
std::optional<Certificate> explore_t_param(const Instance& inst, const Natural& x, const Natural& t);

/// Throws std::invalid_argument for t = 0.
BoundInterval delta_positive_bounds(const Instance& inst, const Natural& t);

}  // namespace unitfrac
