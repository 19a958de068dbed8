#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "json.hpp"

#include "padicframe/padic.hpp"

namespace padicframe {

inline constexpr double kAmplitudeDropThreshold = 1e-14;
inline constexpr std::size_t kRefinementBudget = 1'000'000;

/// x -> amplitude * chi_p(frequency * x) * 1_support(x).
struct CharAtom {
  std::complex<double> amplitude;
  PAdicRational frequency;
  Ball support;
};

/// Builds an atom with its frequency reduced modulo p^radiusLog Z_p (only
/// digits below position radiusLog kept). The discarded part is constant on
/// the support and is folded into the amplitude.
CharAtom makeAtom(std::complex<double> amplitude, const PAdicRational& frequency, const Ball& support);

/// Locally constant, compactly supported function: a finite sum of atoms with
/// pairwise disjoint supports, sorted by support. Only canonicalize() builds one.
class LCFunction {
 public:
  LCFunction() = default;

  const std::vector<CharAtom>& atoms() const { return atoms_; }
  bool isZero() const { return atoms_.empty(); }

  friend LCFunction canonicalize(std::vector<CharAtom> atoms);

 private:
  std::vector<CharAtom> atoms_;
};

/// Resolves nested or repeated supports by splitting the coarser atom until
/// each ball carries one frequency class. Throws RefinementBudgetExceeded past
/// kRefinementBudget atoms.
LCFunction canonicalize(std::vector<CharAtom> atoms);

LCFunction singleAtom(std::complex<double> amplitude, const PAdicRational& frequency, const Ball& support);
LCFunction operator+(const LCFunction& f, const LCFunction& g);
LCFunction operator*(std::complex<double> c, const LCFunction& f);

std::complex<double> evaluate(const LCFunction& f, const PAdicRational& x);

/// <f, g> = integral of f * conj(g), in closed form per pair of atoms.
std::complex<double> innerProduct(const LCFunction& f, const LCFunction& g);
double l2Norm(const LCFunction& f);

/// Smallest quadrature depth at which f is constant on every coset of p^depth Z_p.
long requiredQuadratureDepth(const LCFunction& f);

/// Riemann sum over cosets of p^depth Z_p, one sample per coset. Exact for
/// locally constant integrands; throws DepthTooCoarse when the cosets are
/// coarser than the constancy scale of either input.
std::complex<double> quadratureInnerProduct(const LCFunction& f, const LCFunction& g, long depth);

/// x -> p^(j/2) f(p^(-j) x - a).
LCFunction dilateTranslate(const LCFunction& f, long j, const PAdicRational& a);

nlohmann::json toJson(const LCFunction& f);
LCFunction functionFromJson(const nlohmann::json& j);

}  // namespace padicframe
