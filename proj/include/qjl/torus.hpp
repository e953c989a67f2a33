#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace qjl {

/// Distance to the nearest integer lattice point, coordinate-wise sup norm on T^b.
double torus_dist(const Eigen::VectorXd& x);
double torus_dist(double x);

/// Frequency vector on T^b together with the finite-horizon Diophantine parameters.
struct Frequency {
  Eigen::VectorXd omega;   // components reduced mod 1 into [0,1)
  double dioph_a = 0.05;
  double dioph_A = 2.0;
  long check_horizon = 1000;

  Frequency() = default;
  explicit Frequency(double w, double a = 0.05, double A = 2.0, long K = 1000);
  Frequency(Eigen::VectorXd w, double a, double A, long K);

  int b() const { return static_cast<int>(omega.size()); }
};

/// Point theta + i*eps on the complexified torus T^b_eta.
struct ComplexPhase {
  Eigen::VectorXd theta;
  Eigen::VectorXd eps;

  ComplexPhase() = default;
  ComplexPhase(double th, double ep);
  ComplexPhase(Eigen::VectorXd th, Eigen::VectorXd ep);

  int b() const { return static_cast<int>(theta.size()); }
  double eps_sup() const { return eps.size() ? eps.cwiseAbs().maxCoeff() : 0.0; }

  /// Shift theta by t*omega (mod 1), eps untouched.
  ComplexPhase shifted(const Eigen::VectorXd& omega, double t) const;
  ComplexPhase shifted(const Frequency& om, double t) const { return shifted(om.omega, t); }
};

/// ||k.omega|| >= a/|k|^A for all integer vectors 0 < |k| <= K (sup norm on k).
bool is_diophantine_finite(const Frequency& omega);

/// ||2 theta - n omega|| >= a'/(1+|n|)^t for all n in (1/denom)*Z with |n| <= horizon.
/// include_zero controls whether the n = 0 term participates.
bool is_nonresonant_phase(double theta, const Frequency& omega, double a_prime, double t,
                          int denom, long horizon, bool include_zero = true);

struct AdmissibleScales {
  std::vector<long> scales;
  long max_gap = 0;  // largest gap between consecutive admissible n (0 if < 2 entries)
};

/// All n in [n_min, n_max] with ||n omega|| <= kappa0, plus the max gap.
AdmissibleScales admissible_scales(const Frequency& omega, double kappa0, long n_min, long n_max);

/// Resonant k: ||q(2 theta - k y)|| <= exp(-|k|^eps_exp) and |k|-minimal among |j| <= |k|.
/// Returned with |k| nondecreasing.
std::vector<long> epsilon_resonances(double theta, const Frequency& y, int q, double eps_exp,
                                     long horizon);

}  // namespace qjl
