#pragma once

// One executable check per frame theorem. Each check computes optimal bounds
// of the families involved and compares them with the guarantee the theorem
// gives; `margin` is the smallest slack over the inequalities checked
// (negative means violated).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "padicframe/frame.hpp"
#include "padicframe/random.hpp"

namespace padicframe {

enum class OperatorRole { ClosedRange, BoundedBelow, Generic };

template <typename Scalar>
struct LinearOperatorMatrix {
  DenseMatrix<Scalar> entries;
  OperatorRole role = OperatorRole::Generic;
};

struct ImageReport {
  FrameBounds original;
  FrameBounds image;  // on span of {U f_i}
  double operatorNorm = 0;
  double pseudoInverseNorm = 0;
  Eigen::Index rank = 0;
  double lowerGuarantee = 0;  // A ||U^+||^-2
  double upperGuarantee = 0;  // B ||U||^2
  bool satisfied = false;
  double margin = 0;
};

struct BoundedBelowReport {
  FrameBounds original;
  FrameBounds image;  // whole space
  double lambdaBest = 0;  // sigma_min(M^*)^2
  double adjointNorm = 0;
  bool predictedFrame = false;
  bool observedFrame = false;
  double lowerGuarantee = 0;  // A lambda
  double upperGuarantee = 0;  // B ||M^*||^2
  bool satisfied = false;
  double margin = 0;
};

struct ErasureReport {
  FrameBounds original;
  FrameBounds survivors;
  double removedBessel = 0;  // C
  std::size_t removedCount = 0;
  bool vacuous = false;       // C >= A
  double lowerGuarantee = 0;  // A - C
  double upperGuarantee = 0;  // B
  bool satisfied = false;
  double margin = 0;
};

struct PerturbationReport {
  FrameBounds original;
  FrameBounds perturbed;
  double differenceBessel = 0;  // C
  bool vacuous = false;
  double lowerGuarantee = 0;  // (sqrt A - sqrt C)^2
  double upperGuarantee = 0;  // (sqrt B + sqrt C)^2
  bool satisfied = false;
  double margin = 0;
};

struct DualPairReport {
  bool reconstructsViaF = false;   // (i)  sum <., f_i> g_i = I
  bool reconstructsViaG = false;   // (ii) sum <., g_i> f_i = I
  bool innerProductForm = false;   // (iii) <f, g> = sum <f, g_i><f_i, g>
  double deviationI = 0;
  double deviationII = 0;
  double deviationIII = 0;
  bool agree = false;
  double lowerF = 0;
  double lowerG = 0;
  bool dualFrames = false;  // both families frames, required when the conditions hold
  bool satisfied = false;
};

struct TightDualReport {
  FrameBounds bounds;
  bool tight = false;
  double alpha = 0;
  bool scaledDualIsDual = false;
  DualPairReport dualPair;
  bool satisfied = false;
};

struct DecompositionReport {
  FrameBounds bounds;
  std::size_t vectors = 0;
  double residualViaDual = 0;   // max relative residual
  double residualViaFrame = 0;
  double tolerance = 1e-8;
  bool satisfied = false;
};

struct InjectivityReport {
  FrameBounds bounds;
  bool viaInjectivity = false;
  bool viaBounds = false;
  bool satisfied = false;
};

namespace detail {

template <typename Derived>
FrameBounds requireFrame(const Eigen::MatrixBase<Derived>& f, const Tolerances& tol) {
  FrameBounds b = frameBounds(f, false, tol);
  if (b.lower <= 0) throw NotAFrame("input family is not a frame for the space");
  return b;
}

template <typename A, typename B>
void requireSameShape(const Eigen::MatrixBase<A>& f, const Eigen::MatrixBase<B>& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) {
    throw IndexMismatch("families differ in index set or space");
  }
}

template <typename Derived, typename OpScalar>
void requireOperatorShape(const Eigen::MatrixBase<Derived>& f, const LinearOperatorMatrix<OpScalar>& op) {
  if (op.entries.rows() != f.rows() || op.entries.cols() != f.rows()) {
    throw std::invalid_argument("operator dimensions do not match the space");
  }
}

}  // namespace detail

/// Image of a frame under U: {U f_i} is a frame for range(U) with bounds
/// A ||U^+||^-2 and B ||U||^2.
template <typename Derived>
ImageReport checkOperatorImage(const Eigen::MatrixBase<Derived>& f,
                               const LinearOperatorMatrix<typename Derived::Scalar>& u, const Tolerances& tol = {}) {
  detail::requireOperatorShape(f, u);
  ImageReport r;
  r.original = detail::requireFrame(f, tol);
  DenseMatrix<typename Derived::Scalar> image = u.entries * f;
  r.image = frameBounds(image, true, tol);
  SingularSummary sigma = singularSummary(u.entries, tol.rank);
  r.operatorNorm = sigma.largest;
  r.rank = sigma.rank;
  r.pseudoInverseNorm = sigma.smallestNonzero > 0 ? 1.0 / sigma.smallestNonzero : 0.0;
  r.lowerGuarantee = r.original.lower * sigma.smallestNonzero * sigma.smallestNonzero;
  r.upperGuarantee = r.original.upper * sigma.largest * sigma.largest;
  r.margin = std::min(r.image.lower - r.lowerGuarantee, r.upperGuarantee - r.image.upper);
  r.satisfied = r.margin >= -tol.inequality;
  return r;
}

/// {M f_i} is a frame iff M^* is bounded below; then its bounds lie in
/// [A lambda, B ||M^*||^2] with lambda = sigma_min(M^*)^2.
template <typename Derived>
BoundedBelowReport checkBoundedBelow(const Eigen::MatrixBase<Derived>& f,
                                     const LinearOperatorMatrix<typename Derived::Scalar>& m,
                                     const Tolerances& tol = {}) {
  detail::requireOperatorShape(f, m);
  BoundedBelowReport r;
  r.original = detail::requireFrame(f, tol);
  SingularSummary sigma = singularSummary(m.entries.adjoint(), tol.rank);
  r.adjointNorm = sigma.largest;
  r.lambdaBest = sigma.smallest * sigma.smallest;
  r.predictedFrame = r.adjointNorm > 0 && r.lambdaBest > tol.rank * r.adjointNorm * r.adjointNorm;
  DenseMatrix<typename Derived::Scalar> image = m.entries * f;
  r.image = frameBounds(image, false, tol);
  r.observedFrame = r.image.lower > 0;
  r.lowerGuarantee = r.original.lower * r.lambdaBest;
  r.upperGuarantee = r.original.upper * r.adjointNorm * r.adjointNorm;
  r.margin = r.upperGuarantee - r.image.upper;
  if (r.observedFrame) r.margin = std::min(r.margin, r.image.lower - r.lowerGuarantee);
  r.satisfied = r.predictedFrame == r.observedFrame && r.margin >= -tol.inequality;
  return r;
}

/// Removing a sub-family with Bessel bound C < A leaves a frame with bounds
/// A - C and B.
template <typename Derived>
ErasureReport checkErasure(const Eigen::MatrixBase<Derived>& f, const std::vector<Eigen::Index>& removed,
                           const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  ErasureReport r;
  r.original = detail::requireFrame(f, tol);
  std::vector<bool> drop(static_cast<std::size_t>(f.cols()), false);
  for (auto i : removed) {
    if (i < 0 || i >= f.cols()) throw std::out_of_range("erasure index out of range");
    drop[static_cast<std::size_t>(i)] = true;
  }
  const auto removedCount = static_cast<Eigen::Index>(std::count(drop.begin(), drop.end(), true));
  DenseMatrix<Scalar> gone(f.rows(), removedCount), kept(f.rows(), f.cols() - removedCount);
  for (Eigen::Index i = 0, a = 0, b = 0; i < f.cols(); ++i) {
    if (drop[static_cast<std::size_t>(i)]) {
      gone.col(a++) = f.col(i);
    } else {
      kept.col(b++) = f.col(i);
    }
  }
  r.removedCount = static_cast<std::size_t>(removedCount);
  r.removedBessel = removedCount == 0 ? 0.0 : besseletBound(gone, tol);
  r.survivors = frameBounds(kept, false, tol);
  r.vacuous = r.removedBessel >= r.original.lower;
  r.lowerGuarantee = r.original.lower - r.removedBessel;
  r.upperGuarantee = r.original.upper;
  r.margin = r.upperGuarantee - r.survivors.upper;
  if (!r.vacuous) r.margin = std::min(r.margin, r.survivors.lower - r.lowerGuarantee);
  r.satisfied = r.margin >= -tol.inequality;
  return r;
}

/// If sum |<g, f_i - g_i>|^2 <= C ||g||^2 with C < A, then {g_i} has bounds
/// (sqrt A - sqrt C)^2 and (sqrt B + sqrt C)^2.
template <typename DerivedF, typename DerivedG>
PerturbationReport checkPerturbation(const Eigen::MatrixBase<DerivedF>& f, const Eigen::MatrixBase<DerivedG>& g,
                                     const Tolerances& tol = {}) {
  detail::requireSameShape(f, g);
  PerturbationReport r;
  r.original = detail::requireFrame(f, tol);
  DenseMatrix<typename DerivedF::Scalar> difference = f - g;
  r.differenceBessel = besseletBound(difference, tol);
  r.perturbed = frameBounds(g, false, tol);
  r.vacuous = r.differenceBessel >= r.original.lower;
  const double rc = std::sqrt(r.differenceBessel);
  r.lowerGuarantee = std::pow(std::sqrt(r.original.lower) - rc, 2);
  r.upperGuarantee = std::pow(std::sqrt(r.original.upper) + rc, 2);
  if (r.vacuous) {
    r.margin = 0;
    r.satisfied = true;
    return r;
  }
  r.margin = std::min(r.perturbed.lower - r.lowerGuarantee, r.upperGuarantee - r.perturbed.upper);
  r.satisfied = r.margin >= -tol.inequality;
  return r;
}

/// Equivalence of the three duality conditions for a pair of Bessel families;
/// (iii) is sampled on `pairs` random unit vector pairs drawn from `seed`.
template <typename DerivedF, typename DerivedG>
DualPairReport checkDualPair(const Eigen::MatrixBase<DerivedF>& f, const Eigen::MatrixBase<DerivedG>& g,
                             std::uint64_t seed = kDefaultSeed, int pairs = 20, const Tolerances& tol = {}) {
  using Scalar = typename DerivedF::Scalar;
  detail::requireSameShape(f, g);
  const Eigen::Index n = f.rows();
  const DenseMatrix<Scalar> identity = DenseMatrix<Scalar>::Identity(n, n);
  DualPairReport r;
  const DenseMatrix<Scalar> mixedI = g * f.adjoint();   // h -> sum <h, f_i> g_i
  const DenseMatrix<Scalar> mixedII = f * g.adjoint();  // h -> sum <h, g_i> f_i
  r.deviationI = n == 0 ? 0.0 : static_cast<double>(singularValues(mixedI - identity)(0));
  r.deviationII = n == 0 ? 0.0 : static_cast<double>(singularValues(mixedII - identity)(0));

  Rng rng(seed);
  for (int k = 0; k < pairs && n > 0; ++k) {
    DenseVector<Scalar> x(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.gaussian<Scalar>();
    for (Eigen::Index i = 0; i < n; ++i) y(i) = rng.gaussian<Scalar>();
    x.normalize();
    y.normalize();
    // <x, y> against sum_i <x, g_i> <f_i, y>.
    const Scalar lhs = y.dot(x);
    const Scalar rhs = (f.adjoint() * y).dot(g.adjoint() * x);
    r.deviationIII = std::max(r.deviationIII, static_cast<double>(std::abs(lhs - rhs)));
  }

  r.reconstructsViaF = r.deviationI <= tol.identity;
  r.reconstructsViaG = r.deviationII <= tol.identity;
  r.innerProductForm = r.deviationIII <= tol.identity;
  r.agree = r.reconstructsViaF == r.reconstructsViaG && r.reconstructsViaG == r.innerProductForm;
  r.lowerF = frameBounds(f, false, tol).lower;
  r.lowerG = frameBounds(g, false, tol).lower;
  r.dualFrames = r.lowerF > 0 && r.lowerG > 0;
  const bool allHold = r.reconstructsViaF && r.reconstructsViaG && r.innerProductForm;
  r.satisfied = r.agree && (!allHold || r.dualFrames);
  return r;
}

/// A frame is tight iff {alpha f_i} is a dual of it for some alpha > 0; the
/// candidate tried is alpha = 1/A.
template <typename Derived>
TightDualReport checkTightViaScaledDual(const Eigen::MatrixBase<Derived>& f, std::uint64_t seed = kDefaultSeed,
                                        const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  TightDualReport r;
  r.bounds = detail::requireFrame(f, tol);
  r.tight = r.bounds.upper - r.bounds.lower <= tol.tightness * r.bounds.upper;
  r.alpha = 1.0 / r.bounds.lower;
  DenseMatrix<Scalar> scaled = f * static_cast<RealOf<Scalar>>(r.alpha);
  r.dualPair = checkDualPair(f, scaled, seed, 20, tol);
  r.scaledDualIsDual = r.dualPair.reconstructsViaF && r.dualPair.reconstructsViaG && r.dualPair.innerProductForm;
  r.satisfied = r.dualPair.satisfied && r.tight == r.scaledDualIsDual;
  return r;
}

/// Both reconstruction formulas on the columns of `vectors`.
template <typename Derived, typename VecDerived>
DecompositionReport checkDecomposition(const Eigen::MatrixBase<Derived>& f, const Eigen::MatrixBase<VecDerived>& vectors,
                                       const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  DecompositionReport r;
  r.bounds = detail::requireFrame(f, tol);
  r.tolerance = tol.inequality;
  const DenseMatrix<Scalar> dual = canonicalDual(f, tol);
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const DenseVector<Scalar> g = vectors.col(k);
    const double scale = std::max<double>(static_cast<double>(g.norm()), std::numeric_limits<double>::min());
    const DenseVector<Scalar> viaDual = f * (dual.adjoint() * g);
    const DenseVector<Scalar> viaFrame = dual * (f.adjoint() * g);
    r.residualViaDual = std::max(r.residualViaDual, static_cast<double>((viaDual - g).norm()) / scale);
    r.residualViaFrame = std::max(r.residualViaFrame, static_cast<double>((viaFrame - g).norm()) / scale);
  }
  r.vectors = static_cast<std::size_t>(vectors.cols());
  r.satisfied = r.residualViaDual <= tol.inequality && r.residualViaFrame <= tol.inequality;
  return r;
}

template <typename Derived>
InjectivityReport checkInjectivity(const Eigen::MatrixBase<Derived>& f, const Tolerances& tol = {}) {
  InjectivityReport r;
  r.bounds = frameBounds(f, false, tol);
  r.viaBounds = r.bounds.lower > 0;
  r.viaInjectivity = isFrameViaInjectivity(f, tol);
  r.satisfied = r.viaBounds == r.viaInjectivity;
  return r;
}

}  // namespace padicframe
