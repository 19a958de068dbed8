#include "padicframe/padic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace padicframe {

bool isPrime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(long p) : value_(static_cast<int>(p)) {
  if (p > 2147483647L || !isPrime(p)) throw std::invalid_argument("p must be prime");
}

namespace {

mpz_class powZ(Prime p, unsigned long k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p.value()), k);
  return out;
}

long parseLong(std::string_view text, std::string_view what) {
  std::string s(text);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw std::invalid_argument("malformed " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

}  // namespace

mpq_class powerOfP(Prime p, long k) {
  if (k >= 0) return mpq_class(powZ(p, static_cast<unsigned long>(k)));
  mpq_class out(mpz_class(1), powZ(p, static_cast<unsigned long>(-k)));
  out.canonicalize();
  return out;
}

PAdicRational::PAdicRational(Prime p) : prime_(p), mantissa_(0) {}

PAdicRational::PAdicRational(Prime p, mpz_class mantissa, long exponent)
    : prime_(p), mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

PAdicRational PAdicRational::fromInteger(Prime p, long value) {
  return PAdicRational(p, mpz_class(value), 0);
}

PAdicRational PAdicRational::fromRational(Prime p, const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  mpz_class den = q.get_den();
  mpz_class pz(p.value());
  long k = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
  if (den != 1) {
    throw std::invalid_argument("denominator of " + q.get_str() + " is not a power of " +
                                std::to_string(p.value()));
  }
  return PAdicRational(p, q.get_num(), -k);
}

PAdicRational PAdicRational::parse(std::string_view text) {
  auto star = text.find('*');
  auto caret = text.find('^', star == std::string_view::npos ? 0 : star);
  if (star == std::string_view::npos || caret == std::string_view::npos) {
    throw std::invalid_argument("expected 'm*p^e', got '" + std::string(text) + "'");
  }
  mpz_class m;
  std::string mText(text.substr(0, star));
  if (mText.empty() || m.set_str(mText, 10) != 0) {
    throw std::invalid_argument("malformed mantissa in '" + std::string(text) + "'");
  }
  long p = parseLong(text.substr(star + 1, caret - star - 1), "prime");
  long e = parseLong(text.substr(caret + 1), "exponent");
  return PAdicRational(Prime(p), std::move(m), e);
}

PAdicRational PAdicRational::parse(std::string_view text, Prime expected) {
  PAdicRational x = parse(text);
  if (!(x.prime() == expected)) {
    throw std::invalid_argument("'" + std::string(text) + "' is not over p = " +
                                std::to_string(expected.value()));
  }
  return x;
}

void PAdicRational::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  mpz_class pz(prime_.value());
  exponent_ += static_cast<long>(
      mpz_remove(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), pz.get_mpz_t()));
}

void PAdicRational::requireSamePrime(const PAdicRational& other) const {
  if (!(prime_ == other.prime_)) throw std::invalid_argument("prime mismatch");
}

std::optional<long> PAdicRational::valuation() const {
  if (isZero()) return std::nullopt;
  return exponent_;
}

mpq_class PAdicRational::toRational() const {
  if (exponent_ >= 0) return mpq_class(mantissa_ * powZ(prime_, static_cast<unsigned long>(exponent_)));
  mpq_class out(mantissa_, powZ(prime_, static_cast<unsigned long>(-exponent_)));
  out.canonicalize();
  return out;
}

double PAdicRational::toDouble() const { return toRational().get_d(); }

std::string PAdicRational::toString() const {
  return mantissa_.get_str() + "*" + std::to_string(prime_.value()) + "^" + std::to_string(exponent_);
}

PAdicRational PAdicRational::scaledByPowerOfP(long k) const {
  PAdicRational out = *this;
  if (!out.isZero()) out.exponent_ += k;
  return out;
}

PAdicRational PAdicRational::operator-() const {
  PAdicRational out = *this;
  out.mantissa_ = -out.mantissa_;
  return out;
}

PAdicRational& PAdicRational::operator+=(const PAdicRational& other) {
  requireSamePrime(other);
  if (other.isZero()) return *this;
  if (isZero()) return *this = other;
  long e = std::min(exponent_, other.exponent_);
  mantissa_ = mantissa_ * powZ(prime_, static_cast<unsigned long>(exponent_ - e)) +
              other.mantissa_ * powZ(prime_, static_cast<unsigned long>(other.exponent_ - e));
  exponent_ = e;
  normalize();
  return *this;
}

PAdicRational& PAdicRational::operator-=(const PAdicRational& other) { return *this += -other; }

PAdicRational& PAdicRational::operator*=(const PAdicRational& other) {
  requireSamePrime(other);
  mantissa_ *= other.mantissa_;
  exponent_ += other.exponent_;
  normalize();
  return *this;
}

int compareReal(const PAdicRational& a, const PAdicRational& b) {
  a.requireSamePrime(b);
  int c = cmp(a.toRational(), b.toRational());
  return (c > 0) - (c < 0);
}

std::optional<long> valuation(const PAdicRational& x) { return x.valuation(); }

mpq_class norm(const PAdicRational& x) {
  if (x.isZero()) return mpq_class(0);
  return powerOfP(x.prime(), -x.exponent());
}

PAdicRational fractionalPart(const PAdicRational& x) {
  if (x.isZero() || x.exponent() >= 0) return PAdicRational(x.prime());
  mpz_class modulus = powZ(x.prime(), static_cast<unsigned long>(-x.exponent()));
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.mantissa().get_mpz_t(), modulus.get_mpz_t());
  return PAdicRational(x.prime(), std::move(r), x.exponent());
}

UnitPhase UnitPhase::fromTurns(const mpq_class& t) {
  mpq_class q = t;
  q.canonicalize();
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  UnitPhase out;
  out.turns_ = q - mpq_class(whole);
  out.turns_.canonicalize();
  return out;
}

UnitPhase UnitPhase::multiply(const UnitPhase& other) const { return fromTurns(turns_ + other.turns_); }

UnitPhase UnitPhase::conjugate() const { return fromTurns(-turns_); }

std::complex<double> UnitPhase::toComplex() const {
  // Quarter turns are handled exactly so that 1, i, -1, -i carry no rounding.
  mpq_class quarters = turns_ * 4;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), quarters.get_num_mpz_t(), quarters.get_den_mpz_t());
  mpq_class rest = quarters - mpq_class(q);
  double angle = rest.get_d() * std::numbers::pi / 2.0;
  double c = std::cos(angle), s = std::sin(angle);
  switch (q.get_si() & 3) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

UnitPhase characterPhase(const PAdicRational& x) {
  return UnitPhase::fromTurns(fractionalPart(x).toRational());
}

namespace {

// Representative of center + p^(-radiusLog) Z_p with all digits at positions
// >= -radiusLog removed.
PAdicRational reduceCenter(const PAdicRational& center, long radiusLog) {
  return fractionalPart(center.scaledByPowerOfP(radiusLog)).scaledByPowerOfP(-radiusLog);
}

}  // namespace

Ball::Ball(PAdicRational center, long radiusLog)
    : center_(reduceCenter(center, radiusLog)), radiusLog_(radiusLog) {}

bool Ball::contains(const PAdicRational& x) const {
  auto v = (x - center_).valuation();
  return !v || *v >= -radiusLog_;
}

mpq_class Ball::measure() const { return powerOfP(prime(), radiusLog_); }

std::vector<Ball> Ball::split() const {
  std::vector<Ball> children;
  children.reserve(static_cast<std::size_t>(prime().value()));
  for (int k = 0; k < prime().value(); ++k) {
    PAdicRational offset(prime(), mpz_class(k), -radiusLog_);
    children.emplace_back(center_ + offset, radiusLog_ - 1);
  }
  return children;
}

std::string Ball::toString() const { return center_.toString() + ";" + std::to_string(radiusLog_); }

Ball Ball::parse(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    throw std::invalid_argument("expected 'center;radiusLog', got '" + std::string(text) + "'");
  }
  return Ball(PAdicRational::parse(text.substr(0, semi)), parseLong(text.substr(semi + 1), "radiusLog"));
}

bool operator<(const Ball& a, const Ball& b) {
  int c = compareReal(a.center_, b.center_);
  if (c != 0) return c < 0;
  return a.radiusLog_ < b.radiusLog_;
}

BallRelation ballRelation(const Ball& first, const Ball& second) {
  long outer = std::max(first.radiusLog(), second.radiusLog());
  auto v = (first.center() - second.center()).valuation();
  if (v && *v < -outer) return BallRelation::Disjoint;
  if (first.radiusLog() == second.radiusLog()) return BallRelation::Equal;
  return first.radiusLog() < second.radiusLog() ? BallRelation::FirstInsideSecond
                                                 : BallRelation::SecondInsideFirst;
}

mpq_class ballMeasure(const Ball& b) { return b.measure(); }

std::vector<Ball> splitBall(const Ball& b) { return b.split(); }

}  // namespace padicframe
