#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "padicframe/errors.hpp"

namespace padicframe {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

using MatrixXcd = DenseMatrix<std::complex<double>>;
using VectorXcd = DenseVector<std::complex<double>>;

inline constexpr double kHermitianTolerance = 1e-10;

/// Dense matrix equal to its conjugate transpose. The constructor rejects
/// inputs with max |M - M^H| above tolerance * max(1, max |M|) and stores the
/// symmetrized matrix.
template <typename Scalar>
class HermitianMatrix {
 public:
  template <typename Derived>
  explicit HermitianMatrix(const Eigen::MatrixBase<Derived>& m, double tolerance = kHermitianTolerance) {
    if (m.rows() != m.cols()) throw std::invalid_argument("Hermitian matrix must be square");
    DenseMatrix<Scalar> a = m;
    double scale = a.size() == 0 ? 1.0 : std::max<double>(1.0, a.cwiseAbs().maxCoeff());
    double skew = a.size() == 0 ? 0.0 : static_cast<double>((a - a.adjoint()).cwiseAbs().maxCoeff());
    if (skew > tolerance * scale) {
      throw std::invalid_argument("matrix is not Hermitian (skew " + std::to_string(skew) + ")");
    }
    matrix_ = (a + a.adjoint()) / RealOf<Scalar>(2);
  }

  const DenseMatrix<Scalar>& matrix() const { return matrix_; }
  Eigen::Index size() const { return matrix_.rows(); }

 private:
  DenseMatrix<Scalar> matrix_;
};

template <typename Derived>
HermitianMatrix(const Eigen::MatrixBase<Derived>&, double = kHermitianTolerance)
    -> HermitianMatrix<typename Derived::Scalar>;

struct JacobiOptions {
  int maxSweeps = 100;
  double offDiagonalTolerance = 1e-13;  // relative to ||M||_F
};

template <typename Scalar>
struct Eigensystem {
  DenseVector<RealOf<Scalar>> values;  // ascending
  DenseMatrix<Scalar> vectors;         // columns, unitary
  int sweeps = 0;
};

namespace detail {

template <typename Scalar>
RealOf<Scalar> offDiagonalNorm(const DenseMatrix<Scalar>& a) {
  RealOf<Scalar> sum = 0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r != c) sum += Eigen::numext::abs2(a(r, c));
    }
  }
  return std::sqrt(sum);
}

// Fixes the eigenvector phase: the first entry of largest modulus becomes real
// and positive.
template <typename Scalar>
void normalizePhase(Eigen::Ref<DenseVector<Scalar>> v) {
  Eigen::Index best = 0;
  RealOf<Scalar> bestAbs = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    RealOf<Scalar> m = std::abs(v(i));
    if (m > bestAbs * (1 + 1e-12)) {
      bestAbs = m;
      best = i;
    }
  }
  if (bestAbs > 0) v *= Eigen::numext::conj(v(best)) / bestAbs;
}

template <typename Scalar>
bool lexLess(const DenseVector<Scalar>& a, const DenseVector<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    auto ar = Eigen::numext::real(a(i)), br = Eigen::numext::real(b(i));
    if (ar != br) return ar < br;
    auto ai = Eigen::numext::imag(a(i)), bi = Eigen::numext::imag(b(i));
    if (ai != bi) return ai < bi;
  }
  return false;
}

}  // namespace detail

/// Cyclic Jacobi diagonalization M V = V diag(lambda). Eigenvalues ascending,
/// ties broken by lexicographic order of the phase-normalized eigenvectors.
/// Throws ConvergenceFailure when the sweep budget runs out.
template <typename Scalar>
Eigensystem<Scalar> hermitianEigensystem(const HermitianMatrix<Scalar>& m, const JacobiOptions& options = {}) {
  using Real = RealOf<Scalar>;
  const Eigen::Index n = m.size();
  DenseMatrix<Scalar> a = m.matrix();
  DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Identity(n, n);
  const Real tolerance = static_cast<Real>(options.offDiagonalTolerance) * a.norm();

  int sweep = 0;
  while (detail::offDiagonalNorm(a) > tolerance) {
    if (sweep == options.maxSweeps) {
      throw ConvergenceFailure("Jacobi eigensolver did not converge in " + std::to_string(options.maxSweeps) +
                               " sweeps");
    }
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real apqAbs = std::abs(a(p, q));
        if (apqAbs == Real(0)) continue;
        const Real app = Eigen::numext::real(a(p, p));
        const Real aqq = Eigen::numext::real(a(q, q));
        const Scalar phase = a(p, q) / apqAbs;

        // Real rotation annihilating |a_pq| after the phase is factored out.
        const Real theta = (aqq - app) / (2 * apqAbs);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const Real c = 1 / std::sqrt(t * t + 1);
        const Real s = t * c;

        // J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on rows/cols (p, q).
        const Scalar jpq = s * phase;
        const Scalar jqp = -s * Eigen::numext::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {  // A <- A J
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * jpq + akq * c;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- J^H A
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + Eigen::numext::conj(jqp) * aqk;
          a(q, k) = Eigen::numext::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Eigen::numext::real(a(p, p));
        a(q, q) = Eigen::numext::real(a(q, q));
        for (Eigen::Index k = 0; k < n; ++k) {  // V <- V J
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * c;
        }
      }
    }
  }

  for (Eigen::Index k = 0; k < n; ++k) detail::normalizePhase<Scalar>(v.col(k));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::vector<DenseVector<Scalar>> columns;
  for (Eigen::Index k = 0; k < n; ++k) columns.emplace_back(v.col(k));
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const Real lx = Eigen::numext::real(a(x, x)), ly = Eigen::numext::real(a(y, y));
    if (lx != ly) return lx < ly;
    return detail::lexLess(columns[static_cast<std::size_t>(x)], columns[static_cast<std::size_t>(y)]);
  });

  Eigensystem<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.sweeps = sweep;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = Eigen::numext::real(a(src, src));
    out.vectors.col(k) = columns[static_cast<std::size_t>(src)];
  }
  return out;
}

template <typename Derived>
auto hermitianEigensystem(const Eigen::MatrixBase<Derived>& m, const JacobiOptions& options = {}) {
  return hermitianEigensystem(HermitianMatrix<typename Derived::Scalar>(m), options);
}

/// Singular values, descending.
template <typename Derived>
DenseVector<RealOf<typename Derived::Scalar>> singularValues(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(m.eval());
  return svd.singularValues();
}

}  // namespace padicframe
