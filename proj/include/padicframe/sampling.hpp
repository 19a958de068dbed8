#pragma once

// Seeded random instances: p-adic test functions and coordinate frames.

#include <complex>

#include <Eigen/Dense>

#include "padicframe/eigensystem.hpp"
#include "padicframe/function_space.hpp"
#include "padicframe/random.hpp"
#include "padicframe/test_space.hpp"

namespace padicframe {

struct RandomFunctionOptions {
  int maxAtoms = 20;
  long minRadiusLog = -2;
  long maxRadiusLog = 1;
  long frequencySpread = 3;  // frequency valuation within [radiusLog - spread, radiusLog - 1]
};

/// A canonical function with up to maxAtoms random atoms (before refinement);
/// constant on cosets of p^d Z_p for d = spread - minRadiusLog.
LCFunction randomFunction(Rng& rng, Prime p, const RandomFunctionOptions& options = {});

/// A random element of the test space made of up to maxAtoms atoms.
LCFunction randomFunctionInSpace(Rng& rng, const TestSpace& space, int maxAtoms = 3);

template <typename Scalar>
DenseMatrix<Scalar> randomGaussianMatrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  DenseMatrix<Scalar> m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.gaussian<Scalar>();
  return m;
}

template <typename Scalar>
DenseMatrix<Scalar> randomUnitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<DenseMatrix<Scalar>> qr(randomGaussianMatrix<Scalar>(rng, n, n));
  DenseMatrix<Scalar> q = qr.householderQ();
  return q;
}

/// n x count Gaussian frame with member norms spread by factors in [0.2, 1.5].
template <typename Scalar>
DenseMatrix<Scalar> randomFrame(Rng& rng, Eigen::Index n, Eigen::Index count) {
  DenseMatrix<Scalar> f = randomGaussianMatrix<Scalar>(rng, n, count);
  for (Eigen::Index c = 0; c < count; ++c) f.col(c) *= static_cast<RealOf<Scalar>>(rng.uniform(0.2, 1.5));
  return f;
}

/// n x count frame with F F^H = bound * I (rows of a random unitary).
template <typename Scalar>
DenseMatrix<Scalar> randomTightFrame(Rng& rng, Eigen::Index n, Eigen::Index count, double bound) {
  DenseMatrix<Scalar> u = randomUnitary<Scalar>(rng, count);
  return u.topRows(n) * static_cast<RealOf<Scalar>>(std::sqrt(bound));
}

/// Another dual of F: S^-1 F + Y (I - F^H S^-1 F) for a random Y.
template <typename Scalar>
DenseMatrix<Scalar> randomAlternateDual(Rng& rng, const DenseMatrix<Scalar>& f, double spread = 0.3) {
  const DenseMatrix<Scalar> canonical = Eigen::LLT<DenseMatrix<Scalar>>(f * f.adjoint()).solve(f);
  const DenseMatrix<Scalar> y = randomGaussianMatrix<Scalar>(rng, f.rows(), f.cols()) * RealOf<Scalar>(spread);
  const DenseMatrix<Scalar> complement = DenseMatrix<Scalar>::Identity(f.cols(), f.cols()) - f.adjoint() * canonical;
  return canonical + y * complement;
}

/// A frame for the test space built from p-adic functions: `sparse` random
/// functions of few atoms followed by dimension() dense random elements.
MatrixXcd randomSpaceFrame(Rng& rng, const TestSpace& space, int sparse);

}  // namespace padicframe
