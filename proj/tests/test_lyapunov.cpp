#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "qjl/lyapunov.hpp"
#include "qjl/parallel.hpp"

using namespace qjl;

namespace {
const double kGolden = 0.6180339887498949;
const Frequency kOm(kGolden);
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Naive extended-precision product of the scalar cosine transfer matrices; long double
/// carries the full dynamic range up to n = 500 at moderate coupling.
long double naive_log_norm(double lambda, double E, double theta, long n) {
  std::complex<long double> a = 1, b = 0, c = 0, d = 1;
  for (long j = 0; j < n; ++j) {
    long double v = 2.0L * static_cast<long double>(lambda) *
                    cosl(static_cast<long double>(kTwoPi) *
                         static_cast<long double>(std::fmod(theta + j * kGolden, 1.0)));
    std::complex<long double> t = static_cast<long double>(E) - v;
    std::complex<long double> na = t * a - c, nb = t * b - d;
    c = a;
    d = b;
    a = na;
    b = nb;
  }
  long double fro = sqrtl(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  return logl(fro);
}
}  // namespace

TEST_CASE("renormalized wedge products agree with a naive extended-precision product") {
  BlockModel m = make_amo(2.0, kOm);
  for (double theta : {0.123, 0.711}) {
    Eigen::VectorXd lw = log_wedge_norms(m, 0.5, ComplexPhase(theta, 0.0), 500);
    long double want = naive_log_norm(2.0, 0.5, theta, 500);
    CHECK(std::fabs(lw[0] - static_cast<double>(want)) < 1e-8);
  }
}

TEST_CASE("AMO exponents: pairing, Herman bound, supercritical value") {
  BlockModel m = make_amo(3.0, kOm);
  LyapunovProfile p = finite_scale_exponents(m, 0.4, 0.0, 2000, 100);
  REQUIRE(p.L.size() == 2);
  CHECK(std::fabs(p.L[0] + p.L[1]) < 1e-6);        // det-1 pairing
  CHECK(p.L[0] >= std::log(3.0) - 0.02);           // Herman bound log(lambda)
  CHECK(p.L[0] == doctest::Approx(std::log(3.0)).epsilon(0.02));
  CHECK(p.Lsum[0] == doctest::Approx(p.L[0]));
  CHECK(p.Lsum[1] == doctest::Approx(p.L[0] + p.L[1]));
}

TEST_CASE("free cocycle has zero exponent") {
  BlockModel m = make_amo(0.0, kOm);
  LyapunovProfile p = finite_scale_exponents(m, 0.5, 0.0, 500, 50);
  CHECK(std::fabs(p.L[0]) < 0.02);
}

TEST_CASE("supercritical acceleration is 1, subcritical is 0") {
  AccelerationEstimate hi = acceleration(make_amo(3.0, kOm), 0.4, 1, 0.05, 0.02, 1000, 64);
  CHECK(hi.kappa_rounded == 1);
  CHECK(hi.quantization_gap < 0.2);
  AccelerationEstimate lo = acceleration(make_amo(0.5, kOm), 0.4, 1, 0.02, 0.02, 1000, 64);
  CHECK(lo.kappa_rounded == 0);
  CHECK(lo.quantization_gap < 0.2);
}

TEST_CASE("supercritical AMO is affine in eps with slope 2 pi kappa") {
  BlockModel m = make_amo(3.0, kOm);
  auto prof = complexified_profile(m, 0.4, 1, {0.02, 0.06, 0.1}, 1000, 64);
  REQUIRE(prof.size() == 3);
  double slope = (prof[2].second - prof[0].second) / (prof[2].first - prof[0].first);
  CHECK(slope == doctest::Approx(kTwoPi).epsilon(0.02));
}

TEST_CASE("scaling law relates the block and companion cocycles") {
  std::vector<Complex> v = {Complex(0.4, 0.0), Complex(1.2, 0.0)};
  LongRangeModel lr = make_longrange(v, scalar_cosine(0.6), kOm);
  BlockModel m = longrange_to_block(lr);
  const long n = 500;
  const int grid = 32;
  std::vector<double> block_vals(grid), comp_vals(grid);
  for (int i = 0; i < grid; ++i) {
    double theta = (i + 0.5) / grid;
    block_vals[i] = log_wedge_norms(m, 0.3, ComplexPhase(theta, 0.0), n)[0] / n;
    ScaledMatrix s = ScaledMatrix::identity(2 * m.d);
    for (long j = 0; j < n * m.d; ++j) {
      s.left_multiply(longrange_step(lr, 0.3,
                                     ComplexPhase(theta, 0.0).shifted(kOm, j / double(m.d))));
      s.renormalize();
    }
    comp_vals[i] = s.log_op_norm() / (n * m.d);
  }
  double Lblock = pairwise_sum(block_vals) / grid;
  double Lcomp = pairwise_sum(comp_vals) / grid;
  CHECK(Lblock == doctest::Approx(m.d * Lcomp).epsilon(0.02));
}

TEST_CASE("large deviation fraction is tiny for supercritical AMO") {
  LdtReport r = ldt_deviation_fraction(make_amo(3.0, kOm), 0.4, 0.0, 300, 1024, 0.3);
  CHECK(r.fraction < 0.02);
  CHECK(r.clusters <= 4 * 300);
}

TEST_CASE("avalanche principle on the boundary example and on rotations") {
  // all blocks diag(10, 0.1): hypotheses hold with exact equality at kappa = 0.01, eps = 1
  MatrixXc D = MatrixXc::Zero(2, 2);
  D(0, 0) = 10.0;
  D(1, 1) = 0.1;
  std::vector<MatrixXc> g(12, D);
  AvalancheReport rep = avalanche_check(g, 1.0, 0.01);
  CHECK(rep.applicable);
  CHECK(rep.lhs <= rep.bound);
  CHECK(rep.lhs < 1e-10);  // diagonal case is exact
  // pure rotations: no singular-value gap, not applicable
  std::vector<MatrixXc> rot;
  for (int j = 0; j < 12; ++j) {
    double a = 0.3 * j;
    MatrixXc R(2, 2);
    R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    rot.push_back(R);
  }
  CHECK_FALSE(avalanche_check(rot, 0.5, 0.01).applicable);
}

TEST_CASE("deterministic reductions: profiles identical across thread counts") {
  BlockModel m = make_amo(2.0, kOm);
  LyapunovProfile a = finite_scale_exponents(m, 0.3, 0.02, 200, 64, 1);
  LyapunovProfile b = finite_scale_exponents(m, 0.3, 0.02, 200, 64, 8);
  CHECK(a.L[0] == b.L[0]);  // bitwise
  CHECK(a.L[1] == b.L[1]);
}
