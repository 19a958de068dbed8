#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <stdexcept>

#include "oracles.hpp"
#include "padicframe/padic.hpp"
#include "padicframe/random.hpp"

using namespace padicframe;

namespace {

PAdicRational q(long p, long num, long den) { return PAdicRational::fromRational(Prime(p), mpq_class(num, den)); }

PAdicRational randomElement(Rng& rng, Prime p) {
  if (rng.below(8) == 0) return PAdicRational(p);
  return PAdicRational(p, mpz_class(rng.between(-500, 500)), rng.between(-6, 6));
}

bool canonical(const PAdicRational& x) {
  if (x.isZero()) return x.exponent() == 0;
  return !mpz_divisible_ui_p(x.mantissa().get_mpz_t(), static_cast<unsigned long>(x.prime().value()));
}

}  // namespace

TEST_CASE("prime construction") {
  CHECK(Prime(2).value() == 2);
  CHECK(Prime(97).value() == 97);
  CHECK_THROWS_WITH_AS(Prime(4), "p must be prime", std::invalid_argument);
  CHECK_THROWS_AS(Prime(1), std::invalid_argument);
  CHECK_THROWS_AS(Prime(91), std::invalid_argument);
}

TEST_CASE("canonical form and construction") {
  auto x = PAdicRational(Prime(2), mpz_class(12), 0);
  CHECK(x.mantissa() == 3);
  CHECK(x.exponent() == 2);
  auto zero = PAdicRational(Prime(3), mpz_class(0), 5);
  CHECK(zero.exponent() == 0);
  CHECK_THROWS_AS(PAdicRational::fromRational(Prime(2), mpq_class(1, 3)), std::invalid_argument);
  CHECK(q(3, 5, 9).exponent() == -2);
}

TEST_CASE("valuation") {
  CHECK_FALSE(valuation(PAdicRational(Prime(5))).has_value());
  CHECK(*valuation(PAdicRational::fromInteger(Prime(2), 12)) == 2);
  CHECK(*valuation(q(3, 5, 9)) == -2);
  CHECK(oracle::valuation(mpq_class(12), 2) == 2);
  CHECK(oracle::valuation(mpq_class(5, 9), 3) == -2);

  Rng rng(11);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int i = 0; i < 100; ++i) {
      auto x = randomElement(rng, Prime(p));
      if (x.isZero()) continue;
      CHECK(*x.valuation() == oracle::valuation(x.toRational(), p));
    }
  }
}

TEST_CASE("norm") {
  CHECK(norm(PAdicRational(Prime(2))) == 0);
  CHECK(norm(PAdicRational::fromInteger(Prime(2), 12)) == mpq_class(1, 4));
  CHECK(norm(q(3, 5, 9)) == 9);
}

TEST_CASE("ultrametric inequality, with equality when norms differ") {
  Rng rng(0xC0FFEE);
  for (long p : {2L, 3L, 5L}) {
    for (int i = 0; i < 300; ++i) {
      auto x = randomElement(rng, Prime(p));
      auto y = randomElement(rng, Prime(p));
      auto s = x + y;
      mpq_class nx = norm(x), ny = norm(y), ns = norm(s);
      CHECK(ns <= std::max(nx, ny));
      if (nx != ny) CHECK(ns == std::max(nx, ny));
      CHECK(canonical(s));
      CHECK(canonical(x - y));
      CHECK(canonical(x * y));
      CHECK((x + y).toRational() == x.toRational() + y.toRational());
      CHECK((x * y).toRational() == x.toRational() * y.toRational());
    }
  }
}

TEST_CASE("fractional part") {
  CHECK(fractionalPart(PAdicRational::fromInteger(Prime(3), 3)).isZero());
  CHECK(fractionalPart(q(2, 7, 4)).toRational() == mpq_class(3, 4));
  CHECK(fractionalPart(q(3, -1, 3)).toRational() == mpq_class(2, 3));

  Rng rng(5);
  for (long p : {2L, 3L, 5L}) {
    for (int i = 0; i < 200; ++i) {
      auto x = randomElement(rng, Prime(p));
      auto y = fractionalPart(x);
      CHECK(y.toRational() == oracle::fractionalPart(x.toRational(), p));
      CHECK(y.toRational() >= 0);
      CHECK(y.toRational() < 1);
      CHECK(norm(x - y) <= 1);
      CHECK(fractionalPart(y) == y);
    }
  }
}

TEST_CASE("character phase") {
  CHECK(characterPhase(PAdicRational::fromInteger(Prime(7), 12)).turns() == 0);
  auto phase = characterPhase(q(2, 3, 4));
  CHECK(phase.turns() == mpq_class(3, 4));
  auto z = phase.toComplex();
  CHECK(z.real() == 0.0);
  CHECK(z.imag() == -1.0);
  CHECK(characterPhase(q(2, 1, 2)).toComplex() == std::complex<double>(-1.0, 0.0));

  Rng rng(9);
  for (long p : {2L, 3L, 5L}) {
    for (int i = 0; i < 200; ++i) {
      auto x = randomElement(rng, Prime(p));
      auto y = randomElement(rng, Prime(p));
      CHECK(characterPhase(x + y) == characterPhase(x).multiply(characterPhase(y)));
      auto integer = PAdicRational(Prime(p), mpz_class(rng.between(-1000, 1000)), rng.between(0, 4));
      CHECK(characterPhase(x + integer) == characterPhase(x));
      auto c = characterPhase(x).toComplex();
      CHECK(std::abs(std::abs(c) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("serialization") {
  auto x = PAdicRational::parse("3*2^-2");
  CHECK(x.toRational() == mpq_class(3, 4));
  CHECK(x.toString() == "3*2^-2");
  CHECK(PAdicRational::parse("12*2^0").toString() == "3*2^2");
  CHECK_THROWS_AS(PAdicRational::parse("3/4"), std::invalid_argument);
  CHECK_THROWS_AS(PAdicRational::parse("3*4^1"), std::invalid_argument);
  CHECK_THROWS_AS(PAdicRational::parse("3*2^1", Prime(3)), std::invalid_argument);
  Ball b = Ball::parse("5*2^-1;-3");
  CHECK(b.radiusLog() == -3);
  CHECK(Ball::parse(b.toString()) == b);

  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    auto y = randomElement(rng, Prime(5));
    CHECK(PAdicRational::parse(y.toString()) == y);
  }
}

TEST_CASE("ball canonical center") {
  // 1 + 2 Z_2 described with several representatives.
  Ball a(PAdicRational::fromInteger(Prime(2), 1), -1);
  Ball b(PAdicRational::fromInteger(Prime(2), 7), -1);
  Ball c(PAdicRational::fromInteger(Prime(2), -3), -1);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.center().toRational() == 1);
  CHECK(Ball(a.center(), a.radiusLog()) == a);
  // Z_3 + 1/3 reduced: the digit at position -1 survives.
  Ball d(q(3, 10, 3), 0);
  CHECK(d.center().toRational() == mpq_class(1, 3));
}

TEST_CASE("ball relation") {
  Prime two(2);
  Ball z2(PAdicRational(two), 0);
  Ball even(PAdicRational(two), -1);
  Ball odd(PAdicRational::fromInteger(two, 1), -1);
  CHECK(ballRelation(z2, z2) == BallRelation::Equal);
  CHECK(ballRelation(even, odd) == BallRelation::Disjoint);
  CHECK(ballRelation(odd, z2) == BallRelation::FirstInsideSecond);
  CHECK(ballRelation(z2, odd) == BallRelation::SecondInsideFirst);

  // Trichotomy against a membership-sampling oracle on 8-digit points.
  Rng rng(21);
  for (long p : {2L, 3L}) {
    Prime pp(p);
    for (int i = 0; i < 150; ++i) {
      Ball b1(PAdicRational(pp, mpz_class(rng.between(0, 40)), rng.between(-3, 0)), rng.between(-3, 2));
      Ball b2(PAdicRational(pp, mpz_class(rng.between(0, 40)), rng.between(-3, 0)), rng.between(-3, 2));
      // Points with digits from position -5 to +2 enumerated exhaustively.
      int lo = -5, digits = 8;
      long count = 1;
      for (int k = 0; k < digits; ++k) count *= p;
      bool in1only = false, in2only = false, both = false;
      for (long n = 0; n < count; ++n) {
        PAdicRational x(pp, mpz_class(n), lo);
        bool i1 = b1.contains(x), i2 = b2.contains(x);
        in1only |= i1 && !i2;
        in2only |= i2 && !i1;
        both |= i1 && i2;
      }
      // Both balls have radius <= p^2 and centers with digits >= -3, so each
      // is a union of these sampled cells; the sample decides the relation.
      BallRelation expected = !both ? BallRelation::Disjoint
                              : (!in1only && !in2only) ? BallRelation::Equal
                              : !in1only ? BallRelation::FirstInsideSecond
                                         : BallRelation::SecondInsideFirst;
      if (both) CHECK_FALSE((in1only && in2only));
      CHECK(ballRelation(b1, b2) == expected);
    }
  }
}

TEST_CASE("ball measure") {
  CHECK(ballMeasure(Ball(PAdicRational(Prime(5)), 0)) == 1);
  CHECK(ballMeasure(Ball(PAdicRational(Prime(3)), 2)) == 9);
  CHECK(ballMeasure(Ball(q(2, 5, 2), -3)) == mpq_class(1, 8));
}

TEST_CASE("split ball") {
  Prime two(2);
  auto children = splitBall(Ball(PAdicRational(two), 0));
  REQUIRE(children.size() == 2);
  CHECK(children[0] == Ball(PAdicRational(two), -1));
  CHECK(children[1] == Ball(PAdicRational::fromInteger(two, 1), -1));

  Rng rng(4);
  for (long p : {2L, 3L, 5L}) {
    Prime pp(p);
    for (int i = 0; i < 30; ++i) {
      Ball b(PAdicRational(pp, mpz_class(rng.between(-50, 50)), rng.between(-2, 1)), rng.between(-2, 2));
      auto kids = b.split();
      CHECK(kids.size() == static_cast<std::size_t>(p));
      mpq_class total = 0;
      for (const auto& k : kids) total += k.measure();
      CHECK(total == b.measure());
      for (int s = 0; s < 60; ++s) {
        PAdicRational x(pp, mpz_class(rng.between(-4000, 4000)), rng.between(-4, 0));
        int hits = 0;
        for (const auto& k : kids) hits += k.contains(x) ? 1 : 0;
        CHECK(hits == (b.contains(x) ? 1 : 0));
      }
    }
  }
}
