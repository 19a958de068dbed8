#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <complex>

#include "oracles.hpp"
#include "padicframe/eigensystem.hpp"
#include "padicframe/errors.hpp"
#include "padicframe/sampling.hpp"

using namespace padicframe;

namespace {

MatrixXcd randomHermitian(Rng& rng, Eigen::Index n) {
  MatrixXcd a = randomGaussianMatrix<std::complex<double>>(rng, n, n);
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("trivial spectra") {
  auto id = hermitianEigensystem(MatrixXcd::Identity(4, 4));
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(id.values(k) == 1.0);

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 1;
  auto e = hermitianEigensystem(d);
  CHECK(e.values(0) == 1.0);
  CHECK(e.values(1) == 2.0);
  CHECK(std::abs(e.vectors(1, 0)) == 1.0);
}

TEST_CASE("random Hermitian spectra match characteristic polynomial roots") {
  Rng rng(0xC0FFEE);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixXcd m = randomHermitian(rng, 6);
    auto eig = hermitianEigensystem(m);
    auto roots = oracle::polynomialRoots(oracle::characteristicPolynomial(m));
    std::vector<double> expected;
    for (auto r : roots) expected.push_back(r.real());
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < 6; ++k) CHECK(std::abs(eig.values(k) - expected[static_cast<std::size_t>(k)]) < 1e-8);
  }
}

TEST_CASE("residual and unitarity") {
  Rng rng(3);
  for (Eigen::Index n : {1, 2, 5, 16, 40}) {
    MatrixXcd m = randomHermitian(rng, n);
    auto eig = hermitianEigensystem(m);
    MatrixXcd lambda = eig.values.cast<std::complex<double>>().asDiagonal();
    CHECK((m * eig.vectors - eig.vectors * lambda).norm() <= 1e-10 * m.norm());
    CHECK((eig.vectors.adjoint() * eig.vectors - MatrixXcd::Identity(n, n)).norm() <= 1e-10);
    for (Eigen::Index k = 1; k < n; ++k) CHECK(eig.values(k - 1) <= eig.values(k));
  }
  // Repeated eigenvalues.
  MatrixXcd u = randomUnitary<std::complex<double>>(rng, 6);
  Eigen::VectorXd spectrum(6);
  spectrum << 1, 1, 1, 3, 3, 7;
  MatrixXcd m = u * spectrum.cast<std::complex<double>>().asDiagonal() * u.adjoint();
  auto eig = hermitianEigensystem(m);
  CHECK((eig.values - spectrum).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("real scalar instantiation") {
  Rng rng(5);
  Eigen::MatrixXd a = randomGaussianMatrix<double>(rng, 7, 7);
  Eigen::MatrixXd m = a + a.transpose();
  auto eig = hermitianEigensystem(m);
  CHECK((m * eig.vectors - eig.vectors * eig.values.asDiagonal()).norm() <= 1e-10 * m.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reference(m);
  CHECK((eig.values - reference.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("determinism and phase normalization") {
  Rng rng(12);
  MatrixXcd m = randomHermitian(rng, 8);
  auto a = hermitianEigensystem(m);
  auto b = hermitianEigensystem(m);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
  for (Eigen::Index k = 0; k < 8; ++k) {
    Eigen::Index best;
    a.vectors.col(k).cwiseAbs().maxCoeff(&best);
    CHECK(std::abs(a.vectors(best, k).imag()) < 1e-15);
    CHECK(a.vectors(best, k).real() > 0);
  }
}

TEST_CASE("failures") {
  Rng rng(1);
  MatrixXcd m = randomHermitian(rng, 10);
  JacobiOptions starved;
  starved.maxSweeps = 1;
  CHECK_THROWS_AS(hermitianEigensystem(m, starved), ConvergenceFailure);
  MatrixXcd notHermitian = m;
  notHermitian(0, 1) += 1.0;
  CHECK_THROWS_AS(HermitianMatrix<std::complex<double>>{notHermitian}, std::invalid_argument);
}

TEST_CASE("singular values") {
  Eigen::MatrixXd m(2, 3);
  m << 3, 0, 0, 0, 4, 0;
  auto s = singularValues(m);
  CHECK(s(0) == doctest::Approx(4.0));
  CHECK(s(1) == doctest::Approx(3.0));
}
