#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace padicframe {

/// A prime base p. Construction with a composite or p < 2 throws
/// std::invalid_argument("p must be prime").
class Prime {
 public:
  explicit Prime(long p);

  int value() const { return value_; }
  operator int() const { return value_; }

  friend bool operator==(Prime a, Prime b) { return a.value_ == b.value_; }

 private:
  int value_;
};

bool isPrime(long n);

/// Exact element of Z[1/p], stored as mantissa * p^exponent with p not
/// dividing the mantissa (and exponent 0 for zero).
class PAdicRational {
 public:
  explicit PAdicRational(Prime p);
  PAdicRational(Prime p, mpz_class mantissa, long exponent);

  static PAdicRational fromInteger(Prime p, long value);
  /// Throws std::invalid_argument if the denominator is not a power of p.
  static PAdicRational fromRational(Prime p, const mpq_class& value);
  /// Parses "m*p^e", e.g. "3*2^-2".
  static PAdicRational parse(std::string_view text);
  static PAdicRational parse(std::string_view text, Prime expected);

  Prime prime() const { return prime_; }
  const mpz_class& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }
  bool isZero() const { return mantissa_ == 0; }

  /// nullopt stands for +infinity (the valuation of zero).
  std::optional<long> valuation() const;

  mpq_class toRational() const;
  double toDouble() const;
  std::string toString() const;

  /// Multiplies by p^k.
  PAdicRational scaledByPowerOfP(long k) const;

  PAdicRational operator-() const;
  PAdicRational& operator+=(const PAdicRational& other);
  PAdicRational& operator-=(const PAdicRational& other);
  PAdicRational& operator*=(const PAdicRational& other);

  friend PAdicRational operator+(PAdicRational a, const PAdicRational& b) { return a += b; }
  friend PAdicRational operator-(PAdicRational a, const PAdicRational& b) { return a -= b; }
  friend PAdicRational operator*(PAdicRational a, const PAdicRational& b) { return a *= b; }

  friend bool operator==(const PAdicRational& a, const PAdicRational& b) {
    return a.prime_ == b.prime_ && a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }

  /// Ordering of the values as real rationals: negative, zero or positive.
  friend int compareReal(const PAdicRational& a, const PAdicRational& b);

 private:
  void normalize();
  void requireSamePrime(const PAdicRational& other) const;

  Prime prime_;
  mpz_class mantissa_;
  long exponent_ = 0;
};

/// p^k as an exact rational.
mpq_class powerOfP(Prime p, long k);

std::optional<long> valuation(const PAdicRational& x);

/// |x|_p = p^(-valuation(x)), and 0 for x = 0.
mpq_class norm(const PAdicRational& x);

/// Sum of the negative-position base-p digits of x. Always lies in [0, 1).
PAdicRational fractionalPart(const PAdicRational& x);

/// Element e^(2 pi i t) of the unit circle with t an exact rational in [0, 1).
class UnitPhase {
 public:
  UnitPhase() = default;
  /// Reduces t modulo 1.
  static UnitPhase fromTurns(const mpq_class& t);

  const mpq_class& turns() const { return turns_; }
  UnitPhase multiply(const UnitPhase& other) const;
  UnitPhase conjugate() const;
  std::complex<double> toComplex() const;

  friend bool operator==(const UnitPhase& a, const UnitPhase& b) { return a.turns_ == b.turns_; }

 private:
  mpq_class turns_ = 0;
};

/// chi_p(x) = exp(2 pi i {x}_p).
UnitPhase characterPhase(const PAdicRational& x);

enum class BallRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };

/// The ball {x : |x - center|_p <= p^radiusLog} = center + p^(-radiusLog) Z_p.
/// The center is kept reduced: every digit at position >= -radiusLog is zero.
class Ball {
 public:
  Ball(PAdicRational center, long radiusLog);

  const PAdicRational& center() const { return center_; }
  long radiusLog() const { return radiusLog_; }
  Prime prime() const { return center_.prime(); }

  bool contains(const PAdicRational& x) const;
  mpq_class measure() const;
  /// The p disjoint sub-balls of radiusLog - 1, ordered by digit.
  std::vector<Ball> split() const;

  /// "center;radiusLog", e.g. "5*2^-1;-3".
  std::string toString() const;
  static Ball parse(std::string_view text);

  friend bool operator==(const Ball& a, const Ball& b) {
    return a.radiusLog_ == b.radiusLog_ && a.center_ == b.center_;
  }
  /// Sort key: center as a real rational, then radiusLog.
  friend bool operator<(const Ball& a, const Ball& b);

 private:
  PAdicRational center_;
  long radiusLog_;
};

BallRelation ballRelation(const Ball& first, const Ball& second);
mpq_class ballMeasure(const Ball& b);
std::vector<Ball> splitBall(const Ball& b);

}  // namespace padicframe
