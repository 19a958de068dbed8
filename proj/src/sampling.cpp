#include "padicframe/sampling.hpp"

#include <algorithm>
#include <vector>

namespace padicframe {

namespace {

mpz_class randomBelowPower(Rng& rng, Prime p, long digits) {
  mpz_class out = 0;
  for (long k = 0; k < digits; ++k) out = out * p.value() + static_cast<long>(rng.below(static_cast<std::uint64_t>(p.value())));
  return out;
}

std::complex<double> randomAmplitude(Rng& rng) { return rng.gaussian<std::complex<double>>(); }

}  // namespace

LCFunction randomFunction(Rng& rng, Prime p, const RandomFunctionOptions& options) {
  const long atoms = rng.between(1, options.maxAtoms);
  std::vector<CharAtom> raw;
  for (long i = 0; i < atoms; ++i) {
    const long gamma = rng.between(options.minRadiusLog, options.maxRadiusLog);
    // Center digits from position -3 up to -gamma - 1.
    const long centerDigits = std::max(0L, 3 - gamma);
    PAdicRational center(p, randomBelowPower(rng, p, centerDigits), -3);
    PAdicRational frequency(p);
    if (rng.below(4) != 0) {
      const long spread = rng.between(1, options.frequencySpread);
      frequency = PAdicRational(p, randomBelowPower(rng, p, spread), gamma - spread);
    }
    raw.push_back(CharAtom{randomAmplitude(rng), frequency, Ball(center, gamma)});
  }
  return canonicalize(std::move(raw));
}

LCFunction randomFunctionInSpace(Rng& rng, const TestSpace& space, int maxAtoms) {
  const Prime p = space.prime();
  const long atoms = rng.between(1, maxAtoms);
  std::vector<CharAtom> raw;
  for (long i = 0; i < atoms; ++i) {
    const long gamma = rng.between(-space.fine(), space.coarse());
    PAdicRational center(p, randomBelowPower(rng, p, space.coarse() - gamma), -space.coarse());
    PAdicRational frequency(p, randomBelowPower(rng, p, space.fine() + gamma), -space.fine());
    raw.push_back(CharAtom{randomAmplitude(rng), frequency, Ball(center, gamma)});
  }
  return canonicalize(std::move(raw));
}

MatrixXcd randomSpaceFrame(Rng& rng, const TestSpace& space, int sparse) {
  std::vector<LCFunction> members;
  for (int i = 0; i < sparse; ++i) members.push_back(randomFunctionInSpace(rng, space));
  const auto n = static_cast<Eigen::Index>(space.dimension());
  MatrixXcd out(n, sparse + n);
  out.leftCols(sparse) = coordinates(members, space).synthesis;
  out.rightCols(n) = randomGaussianMatrix<std::complex<double>>(rng, n, n);
  return out;
}

}  // namespace padicframe
