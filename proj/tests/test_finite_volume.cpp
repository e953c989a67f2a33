#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "qjl/finite_volume.hpp"

using namespace qjl;

namespace {
const double kGolden = 0.6180339887498949;
const Frequency kOm(kGolden);
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("log-complex arithmetic") {
  LogComplex z = LogComplex::from(Complex(-2.0, 0.0));
  CHECK(z.log_mag == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(z.to_complex() - Complex(-2.0, 0.0)) < 1e-14);
  CHECK(LogComplex::from(Complex(0, 0)).is_zero());
  CHECK(log_complex_rel_diff(z, z) == doctest::Approx(0.0));
  LogComplex w = LogComplex::from(Complex(-2.0 + 1e-10, 0.0));
  CHECK(log_complex_rel_diff(z, w) < 1e-9);
}

TEST_CASE("free circulant: assembly, determinant, spectrum structure") {
  BlockModel m = make_amo(0.0, kOm);
  FiniteVolumeOperator op = assemble(m, ComplexPhase(0.4, 0.0), 3, BoundaryCondition::Periodic);
  MatrixXc want(3, 3);
  want << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  CHECK((op.entries - want).norm() < 1e-14);
  LogComplex f = log_determinant(op, 0.0);  // eigenvalues {2, -1, -1}: det = 2
  CHECK(f.log_mag == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(f.to_complex() - Complex(2.0, 0.0)) < 1e-12);
  CHECK_THROWS(assemble(m, ComplexPhase(0.0, 0.0), 2, BoundaryCondition::Periodic));
}

TEST_CASE("log determinant against an eigenvalue-product oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  MatrixXc A(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) A(i, j) = Complex(uni(rng), uni(rng));
  MatrixXc H = A + A.adjoint();  // Hermitian, real eigenvalues
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(H, Eigen::EigenvaluesOnly);
  double want = 0.0;
  for (int i = 0; i < 6; ++i) want += std::log(std::fabs(es.eigenvalues()[i]));
  CHECK(log_determinant(H).log_mag == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("periodic determinant identity against the monodromy") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  BlockModel amo = make_amo(2.0, kOm);
  BlockModel xy = make_xy(0.5, scalar_cosine(1.0), kOm);
  BlockModel sk = make_skewshift_dual(0.5, 1, 3, kOm);
  for (int t = 0; t < 5; ++t) {
    double E = 3.0 * uni(rng) - 1.5;
    ComplexPhase z(uni(rng), 0.0);
    CHECK(detP_identity_residual(amo, E, z, 25).residual < 1e-6);
    CHECK(detP_identity_residual(xy, E, z, 12).residual < 1e-6);
    CHECK(detP_identity_residual(sk, E, z, 9).residual < 1e-6);
  }
}

TEST_CASE("green entries: direct solve, Cramer cross-check, exact inverse") {
  BlockModel m = make_amo(0.0, kOm);
  FiniteVolumeOperator op = assemble(m, ComplexPhase(0.1, 0.0), 5, BoundaryCondition::Periodic);
  double E = 0.37;
  MatrixXc A = op.entries - E * MatrixXc::Identity(5, 5);
  MatrixXc inv = A.inverse();
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) {
      GreenEntry g = green(op, E, x, y);
      CHECK(std::abs(g.value - inv(x, y)) < 1e-12);
      CHECK(g.cramer_rel_err < 1e-8);
    }
}

TEST_CASE("Poisson formula: free Laplacian plane wave") {
  BlockModel m = make_amo(0.0, kOm);
  // u_n = e^{i pi n / 3} solves u_{n+1} + u_{n-1} = 2cos(pi/3) u_n = u_n, so E = 1
  auto u = [](long n) { return std::exp(Complex(0.0, kPi * n / 3.0)); };
  for (long mm = 0; mm < 5; ++mm)
    CHECK(poisson_residual(m, 1.0, 0.2, 5, 0, mm, u) < 1e-10);
  // window offsets, too
  CHECK(poisson_residual(m, 1.0, 0.2, 5, 3, 4, u) < 1e-10);
  CHECK_THROWS(poisson_residual(m, 1.0, 0.2, 5, 0, 7, u));
}

TEST_CASE("Poisson formula: transfer-grown eigenfunction of AMO and of a block model") {
  BlockModel amo = make_amo(2.0, kOm);
  Eigen::VectorXcd seed(2);
  seed << Complex(0.7, 0.1), Complex(0.4, -0.3);  // (Phi_{-1}, Phi_0)
  auto u = transfer_eigenfunction(amo, 0.456, 0.123, 0, 10, seed);
  for (long mm : {0L, 3L, 9L}) CHECK(poisson_residual(amo, 0.456, 0.123, 10, 0, mm, u) < 1e-8);

  BlockModel xy = make_xy(0.5, scalar_cosine(1.0), kOm);
  Eigen::VectorXcd seed4(4);
  seed4 << Complex(0.3, 0.0), Complex(-0.2, 0.4), Complex(0.1, 0.1), Complex(0.5, -0.2);
  auto u2 = transfer_eigenfunction(xy, 0.3, 0.321, 0, 8, seed4);
  for (long mm : {0L, 5L, 15L}) CHECK(poisson_residual(xy, 0.3, 0.321, 8, 0, mm, u2) < 1e-8);
}

TEST_CASE("averaged log determinant sandwiches the top exponent") {
  BlockModel m = make_amo(3.0, kOm);
  AvgLogF a = avg_log_f(m, 0.4, 0.0, 55, 200);  // 55 is an admissible scale for the golden mean
  CHECK(a.admissible);
  CHECK(a.excluded == 0);
  CHECK(a.value == doctest::Approx(std::log(3.0)).epsilon(0.05));
}
