#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "qjl/duality.hpp"
#include "qjl/lyapunov.hpp"
#include "qjl/spectra.hpp"

using namespace qjl;

namespace {
const double kGolden = 0.6180339887498949;
const Frequency kOm(kGolden);
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("finite spectra of explicit operators") {
  std::vector<double> free3 = finite_spectrum(make_amo(0.0, kOm), 0.2, 3,
                                              BoundaryCondition::Periodic);
  CHECK(free3[0] == doctest::Approx(-1.0));
  CHECK(free3[1] == doctest::Approx(-1.0));
  CHECK(free3[2] == doctest::Approx(2.0));

  // lambda = 0 periodic ring: plane-wave eigenvalues 2cos(2 pi k / n)
  std::vector<double> ring = finite_spectrum(make_amo(0.0, kOm), 0.7, 8,
                                             BoundaryCondition::Periodic);
  std::vector<double> want;
  for (int k = 0; k < 8; ++k) want.push_back(2.0 * std::cos(kTwoPi * k / 8.0));
  std::sort(want.begin(), want.end());
  for (int k = 0; k < 8; ++k) CHECK(ring[k] == doctest::Approx(want[k]).epsilon(1e-10));
}

TEST_CASE("XY model at rho = 0 has a symmetric spectrum") {
  std::vector<double> ev = finite_spectrum(make_xy(0.0, scalar_cosine(1.0), kOm), 0.31, 10,
                                           BoundaryCondition::Periodic);
  for (size_t i = 0; i < ev.size(); ++i)
    CHECK(ev[i] == doctest::Approx(-ev[ev.size() - 1 - i]).epsilon(1e-8));
}

TEST_CASE("interval Hausdorff distance from endpoints") {
  std::vector<std::pair<double, double>> a = {{0.0, 1.0}, {2.0, 3.0}};
  std::vector<std::pair<double, double>> b = {{0.0, 3.0}};
  CHECK(interval_hausdorff(a, b) == doctest::Approx(0.5));  // midpoint of the gap
  std::vector<std::pair<double, double>> c = {{0.2, 1.0}, {2.0, 3.4}};
  CHECK(interval_hausdorff(a, c) == doctest::Approx(0.4));
  CHECK(interval_hausdorff(a, a) == doctest::Approx(0.0));
}

TEST_CASE("Harper measure and Aubry duality") {
  SpectrumApprox s2 = spectrum_union(make_amo(2.0, kOm), 60, 120, 1e-2);
  CHECK(s2.total_length() == doctest::Approx(4.0).epsilon(0.1));
  SpectrumApprox shalf = spectrum_union(make_amo(0.5, kOm), 60, 120, 1e-2);
  CHECK(shalf.total_length() == doctest::Approx(2.0).epsilon(0.2));
  CHECK(aubry_duality_gap(2.0, kOm, 60, 120) < 0.1);
  CHECK_THROWS(aubry_duality_gap(1.0, kOm, 60, 120));
  // free Laplacian: the twist sweep fills [-2, 2] as a single interval
  SpectrumApprox free0 = spectrum_union(make_amo(0.0, kOm), 60, 120, 5e-3);
  REQUIRE(free0.intervals.size() == 1);
  CHECK(free0.intervals[0].first == doctest::Approx(-2.0).epsilon(1e-3));
  CHECK(free0.intervals[0].second == doctest::Approx(2.0).epsilon(1e-3));
  // refining the grid never shrinks the cover
  SpectrumApprox coarse = spectrum_union(make_amo(2.0, kOm), 40, 30);
  SpectrumApprox fine = spectrum_union(make_amo(2.0, kOm), 40, 60);
  CHECK(fine.total_length() >= coarse.total_length() - 1e-12);
}

TEST_CASE("periodic and Dirichlet spectra approach each other") {
  BlockModel m = make_amo(2.0, kOm);
  auto hausdorff_pd = [&](int n) {
    std::vector<double> p = finite_spectrum(m, 0.13, n, BoundaryCondition::Periodic);
    std::vector<double> d = finite_spectrum(m, 0.13, n, BoundaryCondition::Dirichlet);
    std::vector<std::pair<double, double>> ip, id;
    for (double e : p) ip.emplace_back(e, e);
    for (double e : d) id.emplace_back(e, e);
    return interval_hausdorff(ip, id);
  };
  CHECK(hausdorff_pd(80) < hausdorff_pd(20) + 0.05);
}

TEST_CASE("stacked-bilayer squared-operator identities") {
  CHECK(aa_square_residual(1.0, 1.0, 1.0, 0.0, kOm, 0.21, 6) < 1e-12);
  CHECK(aa_square_residual(1.0, 1.0, 1.0, 0.5, kOm, 0.21, 6) < 1e-10);
  CHECK(aa_square_residual(10.0, 2.0, 1.0, 0.7, kOm, 0.43, 7) < 1e-10);
  CHECK(ab_square_residual(1.0, 1.0, 10.0, 0.0, kOm, 0.21, 6) < 1e-12);
  CHECK(ab_square_residual(1.0, 1.0, 10.0, 0.5, kOm, 0.21, 6) < 1e-10);
  CHECK(ab_square_residual(2.0, 1.5, 7.0, 0.3, kOm, 0.43, 7) < 1e-10);
}

TEST_CASE("coupled Harper at zero coupling doubles the scalar profile") {
  const double lambda = 2.0;
  BlockModel pair = make_coupled_harper(lambda, lambda, 0.0, kOm);
  BlockModel amo = make_amo(lambda, kOm);
  LyapunovProfile p4 = finite_scale_exponents(pair, 0.7, 0.0, 2000, 50);
  LyapunovProfile p2 = finite_scale_exponents(amo, 0.7, 0.0, 2000, 50);
  REQUIRE(p4.L.size() == 4);
  CHECK(std::fabs(p4.L[0] - p2.L[0]) < 1e-3);
  CHECK(std::fabs(p4.L[1] - p2.L[0]) < 1e-3);
  CHECK(std::fabs(p4.L[2] + p2.L[0]) < 1e-3);
  CHECK(std::fabs(p4.L[3] + p2.L[0]) < 1e-3);
}

TEST_CASE("skew-shift averaged exponent: free, dual-localized, contrast") {
  Frequency y(kGolden);
  CHECK(skewshift_avg_lyapunov(0.0, 1, 3, y, 0.0, 2000, 16) < 0.01);
  CHECK(skewshift_avg_lyapunov(3.0, 1, 3, y, 0.0, 1000, 16) > 0.8);
  std::vector<double> spec = skewshift_truncation_spectrum(0.1, 1, 3, kGolden, 0.0, 200);
  CHECK(skewshift_avg_lyapunov(0.1, 1, 3, y, spec[100], 2000, 32) < 0.05);
}

TEST_CASE("duality unitary intertwining on discretized probes") {
  Frequency y(kGolden);
  CHECK(duality_unitary_residual(1.0, 1, 3, y, 24, 3) < 1e-9);
  CHECK(duality_unitary_residual(0.0, 1, 3, y, 24, 2) < 1e-9);
  CHECK_THROWS(duality_unitary_residual(1.0, 1, 3, y, 8, 1));
}

TEST_CASE("graphene large-eps slopes (light grid)") {
  BlockModel aa = make_aa(10.0, 1.0, 1.0, 0.5, kOm);
  SlopeIntercept s = graphene_large_eps_slope(aa, 0.3, 0.8, 150, 32);
  CHECK(s.slope == doctest::Approx(2.0 * kTwoPi).epsilon(0.1));
  BlockModel ab = make_ab(1.0, 1.0, 10.0, 0.5, kOm);
  SlopeIntercept t = graphene_large_eps_slope(ab, 0.3, 0.8, 150, 32);
  CHECK(std::fabs(t.slope) < 0.7);
}
