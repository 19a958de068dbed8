#pragma once

// Frame computations on coordinate families. A family of N members in an
// n-dimensional space with orthonormal basis is an n x N matrix F whose
// columns are the members; the analysis operator is F^H and the frame
// operator is S = F F^H.

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "padicframe/eigensystem.hpp"
#include "padicframe/errors.hpp"

namespace padicframe {

struct Tolerances {
  double rank = 1e-10;        // eigenvalues of S (or sigma^2) below rank * max count as zero
  double inequality = 1e-8;   // slack on theorem inequalities
  double identity = 1e-9;     // operator-norm distance to the identity for duality tests
  double tightness = 1e-9;    // B - A <= tightness * B
  double hermitian = kHermitianTolerance;
  JacobiOptions jacobi{};
};

struct FrameBounds {
  double lower = 0;  // A; exactly 0 when the family is not a frame
  double upper = 0;  // B
  bool onSpanOnly = false;
};

template <typename Derived>
HermitianMatrix<typename Derived::Scalar> frameOperator(const Eigen::MatrixBase<Derived>& synthesis,
                                                        const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  DenseMatrix<Scalar> s = synthesis * synthesis.adjoint();
  return HermitianMatrix<Scalar>(s, tol.hermitian);
}

/// Optimal bounds from the extreme eigenvalues of a frame operator.
template <typename Scalar>
FrameBounds boundsFromOperator(const HermitianMatrix<Scalar>& s, bool onSpanOnly, const Tolerances& tol = {}) {
  FrameBounds out;
  out.onSpanOnly = onSpanOnly;
  if (s.size() == 0) return out;
  auto eig = hermitianEigensystem(s, tol.jacobi);
  const double top = std::max(0.0, static_cast<double>(eig.values(eig.values.size() - 1)));
  out.upper = top;
  const double threshold = tol.rank * top;
  if (top == 0) return out;
  if (onSpanOnly) {
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      if (eig.values(k) > threshold) {
        out.lower = static_cast<double>(eig.values(k));
        break;
      }
    }
  } else {
    const double bottom = static_cast<double>(eig.values(0));
    out.lower = bottom > threshold ? bottom : 0.0;
  }
  return out;
}

/// Optimal frame bounds on the whole coordinate space, or on the span of the
/// family when onSpanOnly is set.
template <typename Derived>
FrameBounds frameBounds(const Eigen::MatrixBase<Derived>& synthesis, bool onSpanOnly, const Tolerances& tol = {}) {
  return boundsFromOperator(frameOperator(synthesis, tol), onSpanOnly, tol);
}

/// lambda_max(S): a Bessel bound valid on the whole space.
template <typename Derived>
double besseletBound(const Eigen::MatrixBase<Derived>& synthesis, const Tolerances& tol = {}) {
  return frameBounds(synthesis, false, tol).upper;
}

/// Frame test through injectivity of the analysis operator F^H, read off the
/// singular values of F rather than the eigenvalues of S.
template <typename Derived>
bool isFrameViaInjectivity(const Eigen::MatrixBase<Derived>& synthesis, const Tolerances& tol = {}) {
  const Eigen::Index n = synthesis.rows();
  if (n == 0) return true;
  if (synthesis.cols() < n) return false;
  auto sigma = singularValues(synthesis.adjoint());
  if (sigma.size() < n || sigma(0) == 0) return false;
  const double ratio = static_cast<double>(sigma(n - 1) / sigma(0));
  return ratio * ratio > tol.rank;
}

template <typename Derived>
DenseMatrix<typename Derived::Scalar> canonicalDual(const Eigen::MatrixBase<Derived>& synthesis,
                                                    const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  auto s = frameOperator(synthesis, tol);
  if (boundsFromOperator(s, false, tol).lower <= 0) throw NotAFrame("family is not a frame for the space");
  Eigen::LLT<DenseMatrix<Scalar>> llt(s.matrix());
  if (llt.info() != Eigen::Success) throw NotAFrame("frame operator is not positive definite");
  return llt.solve(synthesis.derived().eval());
}

template <typename Scalar>
struct Reconstruction {
  DenseVector<Scalar> viaDualCoefficients;   // sum <g, S^-1 f_i> f_i
  DenseVector<Scalar> viaFrameCoefficients;  // sum <g, f_i> S^-1 f_i
};

template <typename Derived, typename VecDerived>
Reconstruction<typename Derived::Scalar> reconstruct(const Eigen::MatrixBase<VecDerived>& g,
                                                     const Eigen::MatrixBase<Derived>& synthesis,
                                                     const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  DenseMatrix<Scalar> dual = canonicalDual(synthesis, tol);
  Reconstruction<Scalar> out;
  out.viaDualCoefficients = synthesis * (dual.adjoint() * g);
  out.viaFrameCoefficients = dual * (synthesis.adjoint() * g);
  return out;
}

/// Orthonormal basis Q of span(F) and the family's coordinates Q^H F in it.
/// A frame sequence becomes a frame for C^rank this way.
template <typename Scalar>
struct SpanCoordinates {
  DenseMatrix<Scalar> basis;
  DenseMatrix<Scalar> family;
};

template <typename Derived>
SpanCoordinates<typename Derived::Scalar> restrictToSpan(const Eigen::MatrixBase<Derived>& synthesis,
                                                         const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  auto eig = hermitianEigensystem(frameOperator(synthesis, tol), tol.jacobi);
  const Eigen::Index n = eig.values.size();
  SpanCoordinates<Scalar> out;
  if (n == 0) return out;
  const double threshold = tol.rank * std::max(0.0, static_cast<double>(eig.values(n - 1)));
  Eigen::Index first = n;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.values(k) > threshold) {
      first = k;
      break;
    }
  }
  out.basis = eig.vectors.rightCols(n - first);
  out.family = out.basis.adjoint() * synthesis;
  return out;
}

/// Largest and smallest nonzero singular value, the rank, and sigma_min over
/// all n singular values.
struct SingularSummary {
  double largest = 0;
  double smallestNonzero = 0;
  double smallest = 0;
  Eigen::Index rank = 0;
};

template <typename Derived>
SingularSummary singularSummary(const Eigen::MatrixBase<Derived>& m, double relativeThreshold) {
  SingularSummary out;
  auto sigma = singularValues(m);
  if (sigma.size() == 0) return out;
  out.largest = static_cast<double>(sigma(0));
  out.smallest = std::min(m.rows(), m.cols()) == sigma.size() ? static_cast<double>(sigma(sigma.size() - 1)) : 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > relativeThreshold * out.largest) {
      out.smallestNonzero = static_cast<double>(sigma(k));
      out.rank = k + 1;
    }
  }
  return out;
}

}  // namespace padicframe
