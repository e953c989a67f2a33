#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "qjl/spectra.hpp"
#include "qjl/zero_count.hpp"

using namespace qjl;

namespace {
const double kGolden = 0.6180339887498949;
const Frequency kOm(kGolden);
constexpr double kTwoPi = 2.0 * std::numbers::pi;

LaurentPoly quadratic() {
  LaurentPoly p;  // z^2 - 4z + 1, roots 2 +- sqrt(3)
  p.k_min = 0;
  p.k_max = 2;
  p.coeffs = Eigen::VectorXcd(3);
  p.coeffs << 1.0, -4.0, 1.0;
  return p;
}
}  // namespace

TEST_CASE("explicit quadratic annulus counts") {
  LaurentPoly p = quadratic();
  // e^{2 pi eps} = 3: 0.268 < 1/3 and 3.73 > 3 are both outside
  AnnulusZeroReport r3 = count_zeros(p, std::log(3.0) / kTwoPi);
  CHECK(r3.count == 0);
  CHECK(r3.roots.size() == 2);
  // e^{2 pi eps} = 4: both inside
  AnnulusZeroReport r4 = count_zeros(p, std::log(4.0) / kTwoPi);
  CHECK(r4.count == 2);
  double lo = 2.0 - std::sqrt(3.0);
  bool found = false;
  for (const auto& w : r4.roots)
    if (std::abs(w - Complex(lo, 0.0)) < 1e-10) found = true;
  CHECK(found);
  // monotone in eps
  CHECK(r3.count <= r4.count);
}

TEST_CASE("constant polynomial has no zeros") {
  LaurentPoly p;
  p.k_min = p.k_max = 0;
  p.coeffs = Eigen::VectorXcd::Constant(1, Complex(2.0, 0.0));
  CHECK(count_zeros(p, 0.5).count == 0);
}

TEST_CASE("free Laplacian determinant is constant in theta") {
  LaurentPoly p = extract_laurent(make_amo(0.0, kOm), 0.0, 3);
  CHECK(p.degree_span() == 0);
  // f == 2: single coefficient of unit modulus under the global scale
  CHECK(p.global_log_scale + std::log(std::abs(p.coeffs[0])) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("AMO coefficients have Chambers-type support {-n, 0, n} at rational frequency") {
  // the interior harmonics cancel exactly when n equals the frequency denominator
  const int n = 4;
  const double lambda = 2.0;
  LaurentPoly p = extract_laurent(make_amo(lambda, Frequency(0.25)), 0.3, n);
  CHECK(p.k_min == -n);
  CHECK(p.k_max == n);
  double cmax = p.coeffs.cwiseAbs().maxCoeff();
  for (int k = p.k_min; k <= p.k_max; ++k) {
    if (k == -n || k == 0 || k == n) continue;
    CHECK(std::abs(p.coeffs[k - p.k_min]) < 1e-10 * cmax);
  }
  double edge = p.global_log_scale + std::log(std::abs(p.coeffs[0]));
  CHECK(edge == doctest::Approx(n * std::log(lambda)).epsilon(1e-8));
  CHECK(std::abs(p.coeffs[0]) == doctest::Approx(std::abs(p.coeffs[2 * n])).epsilon(1e-10));
}

TEST_CASE("skew-shift dual determinant is supported on multiples of q") {
  LaurentPoly p = extract_laurent(make_skewshift_dual(0.5, 1, 3, kOm), 0.2, 4);
  double cmax = p.coeffs.cwiseAbs().maxCoeff();
  for (int k = p.k_min; k <= p.k_max; ++k)
    if (k % 3 != 0) CHECK(std::abs(p.coeffs[k - p.k_min]) < 1e-10 * cmax);
}

TEST_CASE("zero symmetries across the zoo") {
  // real E: {w, 1/conj(w)} reflection for AMO
  AnnulusZeroReport amo = count_zeros(extract_laurent(make_amo(3.0, kOm), 0.5, 8), 0.2);
  CHECK(pairing_check(amo, PairingKind::UnitReflection) < 1e-7);
  CHECK(amo.pairing.size() == amo.roots.size());

  // even long-range model, d = 2: conjugate-rotation with alpha = -(nd - 1) w / d
  std::vector<Complex> v = {Complex(0.4, 0.0), Complex(1.0, 0.0)};
  BlockModel lr = longrange_to_block(make_longrange(v, scalar_cosine(0.5), kOm));
  const int n = 6;
  AnnulusZeroReport even = count_zeros(extract_laurent(lr, 0.3, n), 0.15);
  double alpha = -(n * 2 - 1) * kGolden / 2.0;
  CHECK(pairing_check(even, PairingKind::ConjugateRotation, alpha) < 1e-6);

  // 1/q periodicity: rotation by e^{2 pi i / 3}
  AnnulusZeroReport sk = count_zeros(extract_laurent(make_skewshift_dual(0.5, 1, 3, kOm), 0.2, 4),
                                     0.15);
  CHECK(pairing_check(sk, PairingKind::Rotation, 1.0 / 3.0) < 1e-7);
}

TEST_CASE("Riesz ratio identifies the acceleration for supercritical AMO") {
  BlockModel m = make_amo(3.0, kOm);
  std::vector<double> spec = finite_spectrum(m, 0.0, 50, BoundaryCondition::Dirichlet);
  double E = spec[spec.size() / 2];
  AccelerationEstimate kappa;
  kappa.kappa_rounded = 1;
  RieszRatio r = riesz_ratio(m, E, 30, m.eta / 3.0, kappa);
  CHECK(r.count == 60);
  CHECK(r.ratio == doctest::Approx(1.0));
  CHECK(r.gap == doctest::Approx(0.0));
}

TEST_CASE("degree bound and scale cap") {
  LaurentPoly p = extract_laurent(make_amo(2.0, kOm), 0.1, 10);
  CHECK(p.degree_span() <= 2 * 10);
  CHECK_THROWS(extract_laurent(make_amo(2.0, kOm), 0.1, 61));
}
