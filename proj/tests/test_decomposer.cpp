#include "unitfrac/decomposer.hpp"
#include "unitfrac/scanner.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

namespace unitfrac {
namespace {

using Tuple = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;

Tuple as_tuple(const Triple& t) { return {t.x().as_u64(), t.y().as_u64(), t.z().as_u64()}; }

TEST(Instance, RejectsSmallValues) {
  EXPECT_THROW(Instance(1, 5), std::invalid_argument);
  EXPECT_THROW(Instance(4, 1), std::invalid_argument);
  EXPECT_FALSE(Instance(3, 7).in_conjecture_regime());
  EXPECT_TRUE(Instance(4, 7).in_conjecture_regime());
  EXPECT_EQ(Instance(4, 17).offset(5), 3);
  EXPECT_EQ(Instance(4, 17).offset(2), -9);
}

TEST(Triple, CanonicalOrder) {
  Triple t(2, 3, 2);
  EXPECT_EQ(t.y(), Natural(2));
  EXPECT_EQ(t.z(), Natural(3));
  EXPECT_THROW(Triple(0, 1, 1), std::invalid_argument);
}

TEST(Verify, SpecExamples) {
  EXPECT_TRUE(verify_decomposition(Instance(4, 841), Triple(211, 67280, 489520)).holds);
  EXPECT_TRUE(verify_decomposition(Instance(11, 501), Triple(46, 7682, 11523)).holds);
  auto v = verify_decomposition(Instance(4, 3), Triple(1, 1, 1));
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.lhs, Rational(4, 3));
  EXPECT_EQ(v.rhs, Rational(3));
}

TEST(Trivial, SpecExamples) {
  auto c = trivial_decompose(Instance(4, 2));
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(1, 2, 2));
  EXPECT_EQ(c->route(), Route::Trivial);
  c = trivial_decompose(Instance(5, 3));
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(1, 3, 3));
  EXPECT_FALSE(trivial_decompose(Instance(4, 7)));
  EXPECT_FALSE(trivial_decompose(Instance(2, 7)));
}

TEST(FormulaOne, SpecExamples) {
  auto c = formula_one_at(Instance(4, 3), 2);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(2, 2, 3));
  EXPECT_EQ(c->witness_k(), Rational(1, 2));
  c = formula_one_at(Instance(4, 5), 2);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(2, 5, 10));
  EXPECT_FALSE(formula_one_at(Instance(4, 7), 2));
  EXPECT_FALSE(formula_one_at(Instance(4, 7), 1));
}

TEST(FormulaTwo, SpecExamples) {
  auto c = formula_two_at(Instance(4, 2), 1, 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(1, 2, 2));
  EXPECT_EQ(c->witness_q(), Natural(0));
  c = formula_two_at(Instance(4, 121), 33, 66);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(33, 726, 726));
  EXPECT_EQ(c->witness_q(), Natural(0));
  c = formula_two_at(Instance(4, 17), 5, 34);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(5, 34, 170));
  EXPECT_EQ(c->witness_q(), Natural(68));
  EXPECT_EQ(c->witness_t(), Natural(34));
  EXPECT_EQ(c->describe(), "4/17 = 1/5 + 1/34 + 1/170  [formula-two, t=34, q=68]");
  EXPECT_FALSE(formula_two_at(Instance(4, 17), 4, 34));  // D < 1
}

TEST(QPoly, SpecExamples) {
  EXPECT_EQ(q_poly(Instance(4, 2), 1, 1), 0);
  EXPECT_EQ(q_poly(Instance(4, 577), 145, 33466), Integer(4479892624u));
  // Direct evaluation: t^2 D^2 - 2ntx with D = 3.
  EXPECT_EQ(q_poly(Instance(4, 17), 5, 34), 34 * 34 * 9 - 2 * 17 * 34 * 5);
  EXPECT_EQ(q_poly(Instance(4, 17), 5, 34), 68 * 68);
  EXPECT_LT(q_poly(Instance(4, 16), 5, 1), 0);
}

TEST(Vieta, SpecExamples) {
  auto r = vieta_solve(5, 6);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first, Natural(2));
  EXPECT_EQ(r->second, Natural(3));
  r = vieta_solve(204, 5780);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first, Natural(34));
  EXPECT_EQ(r->second, Natural(170));
  EXPECT_FALSE(vieta_solve(5, 5));
  EXPECT_FALSE(vieta_solve(2, 5));
}

TEST(Vieta, BigOperandsUseExactPath) {
  const Integer y = (Integer(1) << 100) + 12345;
  const Integer z = (Integer(1) << 101) + 999;
  auto r = vieta_solve(Natural(Integer(y + z)), Natural(Integer(y * z)));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first.value(), y);
  EXPECT_EQ(r->second.value(), z);
  EXPECT_FALSE(vieta_solve(Natural(Integer(y + z)), Natural(Integer(y * z + 1))));
}

TEST(Vieta, BruteForceSumUpTo300) {
  // Full S <= 1000 sweep lives in the acceptance binary.
  for (std::uint64_t s = 1; s <= 300; ++s) {
    std::set<std::uint64_t> products;
    for (std::uint64_t y = 1; 2 * y <= s; ++y) products.insert(y * (s - y));
    for (std::uint64_t p = 1; p <= s * s / 4; ++p) {
      auto r = vieta_solve(s, p);
      ASSERT_EQ(r.has_value(), products.count(p) == 1) << s << " " << p;
      if (r) {
        ASSERT_EQ(r->first + r->second, Natural(s));
        ASSERT_EQ(r->first * r->second, Natural(p));
        ASSERT_LE(r->first, r->second);
      }
    }
  }
}

TEST(ExploreT, SpecExamples) {
  auto c = explore_t_param(Instance(4, 3), 2, 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(2, 2, 3));
  EXPECT_EQ(c->route(), Route::Vieta);
  c = explore_t_param(Instance(4, 17), 5, 68);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(5, 34, 170));
  c = explore_t_param(Instance(4, 841), 211, 185600);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(211, 67280, 489520));
  c = explore_t_param(Instance(4, 2), 1, 2);
  ASSERT_TRUE(c);
  EXPECT_EQ(as_tuple(c->triple()), Tuple(1, 2, 2));
}

TEST(ExploreT, EvenDenominatorHalfPivot) {
  // x = n/2 gives D = n; y = z = n needs S = 2n, P = n^2, i.e. t = 2.
  for (std::uint64_t n = 2; n <= 400; n += 2) {
    Instance inst(4, n);
    auto c = explore_t_param(inst, n / 2, 2);
    ASSERT_TRUE(c) << n;
    EXPECT_EQ(as_tuple(c->triple()), Tuple(n / 2, n, n));
    EXPECT_FALSE(explore_t_param(inst, n / 2, 1)) << n;
  }
}

TEST(Bounds, SpecExamples) {
  auto b = delta_positive_bounds(Instance(4, 16), 1);
  EXPECT_TRUE(b.exact);
  EXPECT_EQ(b.left_cut, Rational(2));
  EXPECT_EQ(b.right_cut, Rational(8));
  EXPECT_EQ(q_poly(Instance(4, 16), 1, 1), 112);
  EXPECT_EQ(q_poly(Instance(4, 16), 5, 1), -144);
  EXPECT_EQ(q_poly(Instance(4, 16), 8, 1), 0);

  b = delta_positive_bounds(Instance(4, 8), 1);
  EXPECT_EQ(b.left_cut, Rational(1));
  EXPECT_EQ(b.right_cut, Rational(4));

  b = delta_positive_bounds(Instance(5, 25), 2);
  EXPECT_LT(b.left_cut, Rational(5));
  EXPECT_GT(b.right_cut, Rational(5));
  EXPECT_LT(q_poly(Instance(5, 25), 5, 2), 0);

  EXPECT_THROW(delta_positive_bounds(Instance(4, 8), 0), std::invalid_argument);
}

TEST(Bounds, SignGuaranteeSmallGrid) {
  for (std::uint64_t a : {2, 3, 4, 5, 7}) {
    for (std::uint64_t n = 2; n <= 60; ++n) {
      for (std::uint64_t t = 1; t <= 12; ++t) {
        Instance inst(a, n);
        auto b = delta_positive_bounds(inst, t);
        ASSERT_GT(b.left_cut, Rational(0));
        ASSERT_LE(b.left_cut, b.right_cut);
        const Integer top = (4 * b.right_cut).floor();
        for (Integer x = 1; x <= top; ++x) {
          Rational rx(x);
          Integer v = q_poly(inst, Natural(x), t);
          if (rx < b.left_cut || rx > b.right_cut) {
            ASSERT_GT(v, 0) << a << " " << n << " " << t << " " << x;
          } else if (rx > b.left_cut && rx < b.right_cut) {
            ASSERT_LT(v, 0) << a << " " << n << " " << t << " " << x;
          } else {
            ASSERT_TRUE(b.exact);
            ASSERT_EQ(v, 0);
          }
        }
      }
    }
  }
}

TEST(Identities, FormulaOne) {
  std::mt19937_64 rng(17);
  int hits = 0;
  for (int i = 0; i < 200000 && hits < 500; ++i) {
    std::uint64_t a = 2 + rng() % 10, n = 2 + rng() % 500, x = 1 + rng() % 1000;
    std::int64_t d = static_cast<std::int64_t>(a * x) - static_cast<std::int64_t>(n);
    if (d < 2) continue;
    std::uint64_t two_nx = 2 * n * x;
    if (two_nx % (d - 1) || two_nx % (d + 1)) continue;
    ++hits;
    Rational sum = Rational(1, x) + Rational(d + 1, two_nx) + Rational(d - 1, two_nx);
    ASSERT_EQ(sum, Rational(a, n));
    auto c = formula_one_at(Instance(a, n), x);
    ASSERT_TRUE(c);
    ASSERT_EQ(c->triple(), Triple(x, two_nx / (d + 1), two_nx / (d - 1)));
  }
  EXPECT_GE(hits, 100);
}

TEST(Identities, FormulaTwo) {
  int hits = 0;
  for (std::uint64_t n = 2; n <= 80; ++n) {
    Instance inst(4, n);
    for (std::uint64_t x = n / 4 + 1; x < 3 * n; ++x) {
      for (std::uint64_t t = 1; t <= 60; ++t) {
        Integer v = q_poly(inst, x, t);
        if (v < 0) continue;
        auto q = perfect_square_root(Natural(v));
        if (!q) continue;
        const Integer td = t * inst.offset(x);
        ASSERT_EQ((td - q->value()) * (td + q->value()), Integer(2 * n * t * x));
        auto c = formula_two_at(inst, x, t);
        if (td > q->value()) {
          ASSERT_TRUE(c);
          ++hits;
          // The Vieta system with S = 2tD, P = 2ntx.
          ASSERT_EQ(c->triple().y().value() + c->triple().z().value(), 2 * td);
        }
      }
    }
  }
  EXPECT_GT(hits, 100);
}

TEST(Identities, ScaledInstancesScaleCertificates) {
  // (x, t) for n lifts to (kx, t) for kn with y, z scaled by k.
  const Natural k(Integer((Integer(1) << 96) + 7));
  auto base = formula_two_at(Instance(4, 17), 5, 34);
  ASSERT_TRUE(base);
  auto big = formula_two_at(Instance(4, Natural(17) * k), Natural(5) * k, 34);
  ASSERT_TRUE(big);
  EXPECT_EQ(big->triple(), Triple(base->triple().x() * k, base->triple().y() * k, base->triple().z() * k));
  EXPECT_EQ(*big->witness_q(), *base->witness_q() * k);
}

TEST(Certificate, MakeRejectsBadWitnesses) {
  Instance inst(4, 17);
  EXPECT_THROW(Certificate::make(inst, Triple(5, 34, 171), Route::FormulaTwo, Natural(34), Natural(68)),
               std::logic_error);
  EXPECT_THROW(Certificate::make(inst, Triple(5, 34, 170), Route::FormulaTwo, Natural(34), Natural(67)),
               std::logic_error);
  EXPECT_THROW(Certificate::make(inst, Triple(5, 34, 170), Route::FormulaTwo), std::logic_error);
  EXPECT_THROW(Certificate::make(inst, Triple(5, 34, 170), Route::Vieta, Natural(67)), std::logic_error);
  EXPECT_THROW(Certificate::make(inst, Triple(5, 34, 170), Route::Trivial), std::logic_error);
  EXPECT_NO_THROW(Certificate::make(inst, Triple(5, 34, 170), Route::Vieta, Natural(68)));
  EXPECT_EQ(parse_route("vieta"), Route::Vieta);
  EXPECT_FALSE(parse_route("bogus"));
}

// Every (x, y, z) with y <= z and all three at most 4n^2.
std::set<Tuple> brute_force(std::uint64_t a, std::uint64_t n) {
  std::set<Tuple> out;
  const std::uint64_t cap = 4 * n * n;
  for (std::uint64_t x = 1; x <= cap; ++x) {
    // r = a/n - 1/x = (ax - n) / (nx) must be positive.
    if (a * x <= n) continue;
    const std::uint64_t rn = a * x - n, rd = n * x;
    // y ranges over [rd/rn, 2rd/rn] since y <= z.
    const std::uint64_t y_lo = (rd + rn - 1) / rn;
    const std::uint64_t y_hi = std::min(cap, 2 * rd / rn);
    for (std::uint64_t y = std::max<std::uint64_t>(y_lo, 1); y <= y_hi; ++y) {
      // 1/z = rn/rd - 1/y = (rn*y - rd) / (rd*y).
      const std::uint64_t zn = rn * y - rd;
      if (zn == 0) continue;
      const std::uint64_t zd = rd * y;
      if (zd % zn) continue;
      const std::uint64_t z = zd / zn;
      if (z <= cap) out.insert({x, y, z});
    }
  }
  return out;
}

TEST(OracleEquivalence, CertificatesLieInBruteForceSet) {
  ScanConfig generous{20, 400, true};
  for (std::uint64_t a : {4, 5}) {
    for (std::uint64_t n = 2; n <= 60; ++n) {
      const std::set<Tuple> all = brute_force(a, n);
      const std::uint64_t cap = 4 * n * n;
      Instance inst(a, n);
      bool any = false;
      for (auto c : {trivial_decompose(inst), formula_one_scan(inst, generous), formula_two_scan(inst, generous)}) {
        if (!c) continue;
        any = true;
        ASSERT_TRUE(verify_decomposition(inst, c->triple()).holds);
        Tuple tup = as_tuple(c->triple());
        if (std::get<2>(tup) > cap) continue;  // outside the brute-force box
        EXPECT_EQ(all.count(tup), 1u) << a << "/" << n << " " << c->describe();
      }
      if (any) {
        EXPECT_FALSE(all.empty()) << a << "/" << n;
      }
    }
  }
}

TEST(Soundness, RandomProbes) {
  std::mt19937_64 rng(23);
  int found = 0;
  for (int i = 0; i < 3000; ++i) {
    std::uint64_t a = 2 + rng() % 10, n = 2 + rng() % 3000;
    Instance inst(a, n);
    std::uint64_t x = n / a + 1 + rng() % (3 * n);
    Integer d = inst.offset(x);
    std::uint64_t t_min = std::max<std::uint64_t>(1, (2 * n * x / (d * d)).convert_to<std::uint64_t>());
    std::uint64_t t = t_min + rng() % 100;
    for (auto c :
         {trivial_decompose(inst), formula_one_at(inst, x), formula_two_at(inst, x, t), explore_t_param(inst, x, t)}) {
      if (!c) continue;
      ++found;
      ASSERT_TRUE(verify_decomposition(c->instance(), c->triple()).holds) << c->describe();
    }
  }
  EXPECT_GT(found, 100);
}

}  // namespace
}  // namespace unitfrac
