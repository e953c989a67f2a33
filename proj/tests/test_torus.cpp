#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qjl/torus.hpp"

using namespace qjl;

namespace {
const double kGolden = 0.6180339887498949;
}

TEST_CASE("torus_dist basics") {
  CHECK(torus_dist(0.0) == doctest::Approx(0.0));
  CHECK(torus_dist(0.5) == doctest::Approx(0.5));
  CHECK(torus_dist(0.75) == doctest::Approx(0.25));
  CHECK(torus_dist(-0.1) == doctest::Approx(0.1));
  CHECK(torus_dist(17.25) == doctest::Approx(0.25));
  Eigen::VectorXd v(2);
  v << 0.9, 0.4;
  CHECK(torus_dist(v) == doctest::Approx(0.4));
}

TEST_CASE("golden mean passes the finite Diophantine scan; rationals fail") {
  CHECK(is_diophantine_finite(Frequency(kGolden, 0.05, 2.0, 1000)));
  CHECK_FALSE(is_diophantine_finite(Frequency(1.0 / 3.0, 0.05, 2.0, 1000)));
  // continued-fraction near-rational with a huge partial quotient fails for tight a
  CHECK_FALSE(is_diophantine_finite(Frequency(1.0 / 3.0 + 1e-9, 0.05, 2.0, 1000)));
  // degenerate parameters rejected outright
  CHECK_THROWS(is_diophantine_finite(Frequency(kGolden, -1.0, 2.0, 1000)));
  CHECK_THROWS(is_diophantine_finite(Frequency(kGolden, 0.05, 0.5, 1000)));
}

TEST_CASE("admissible scales of the golden mean are Fibonacci-dominated") {
  AdmissibleScales s = admissible_scales(Frequency(kGolden), 0.05, 1, 100);
  auto has = [&](long n) {
    return std::find(s.scales.begin(), s.scales.end(), n) != s.scales.end();
  };
  for (long f : {13L, 21L, 34L, 55L, 89L}) CHECK(has(f));
  CHECK_FALSE(has(8));   // ||8w|| ~ 0.0557 > 0.05
  CHECK_FALSE(has(12));
  CHECK(s.max_gap > 0);
}

TEST_CASE("nonresonant phase predicate") {
  Frequency om(kGolden);
  // theta = w/2 makes 2 theta - w = 0: resonant
  CHECK_FALSE(is_nonresonant_phase(kGolden / 2.0, om, 0.01, 2.0, 1, 200));
  // a generic phase passes a mild finite check
  CHECK(is_nonresonant_phase(0.147, om, 1e-4, 2.0, 1, 200));
}

TEST_CASE("epsilon resonances start with k = 0 and are |k|-sorted") {
  std::vector<long> r = epsilon_resonances(0.123, Frequency(kGolden), 3, 0.5, 50);
  REQUIRE_FALSE(r.empty());
  CHECK(r.front() == 0);
  for (size_t i = 1; i < r.size(); ++i) CHECK(std::labs(r[i]) >= std::labs(r[i - 1]));
}

TEST_CASE("complex phase shifting wraps theta and keeps eps") {
  ComplexPhase z(0.9, 0.25);
  ComplexPhase s = z.shifted(Frequency(kGolden), 1.0);
  CHECK(s.theta[0] == doctest::Approx(std::fmod(0.9 + kGolden, 1.0)));
  CHECK(s.eps[0] == doctest::Approx(0.25));
  CHECK(z.eps_sup() == doctest::Approx(0.25));
}
