#pragma once

#include <string>

#include "qjl/trig_poly.hpp"

namespace qjl {

/// One block Jacobi operator (H u)_n = B(theta+(n+1)w) u_{n+1} + Bstar(theta+n w) u_{n-1}
/// + V(theta+n w) u_n with analytic matrix coefficients on a strip around the real torus.
struct BlockModel {
  int d = 1;
  int b = 1;
  Frequency omega;
  double eta = 0.5;        // nominal strip half-width
  double eps_lo = -0.5;    // actual strip: eps in [eps_lo, eps_hi]
  double eps_hi = 0.5;
  TrigMatrixPolynomial B;
  TrigMatrixPolynomial Bstar;  // analytic extension of B(theta)^*
  TrigMatrixPolynomial V;      // Hermitian on the real torus
  std::string label;

  bool strip_contains(double eps) const { return eps >= eps_lo && eps <= eps_hi; }
  bool strip_contains(const ComplexPhase& z) const;
};

/// Scalar long-range operator with hopping v_1..v_d (v_{-k} = conj(v_k)) and potential
/// g(theta + n w / d); w is the frequency of the associated block model.
struct LongRangeModel {
  int d = 1;
  std::vector<Complex> v;  // v[k-1] = v_k, k = 1..d; v_d != 0
  TrigMatrixPolynomial g;  // scalar, real-valued on the real torus
  Frequency omega;         // block-model frequency; the scalar recursion steps by omega/d
};

LongRangeModel make_longrange(std::vector<Complex> v, TrigMatrixPolynomial g, Frequency omega);

/// d x d block form of a long-range model: V carries g on the diagonal and the short
/// hoppings off-diagonal; B is the upper-triangular Toeplitz of conj(v_k).
BlockModel longrange_to_block(const LongRangeModel& m);

BlockModel make_amo(double lambda, Frequency omega);
BlockModel make_xy(double rho, const TrigMatrixPolynomial& v, Frequency omega);
BlockModel make_skewshift_dual(double lambda, long p, long q, Frequency y);
BlockModel make_dirac_harper(double lambda, Frequency omega);
BlockModel make_aa(double l1, double l2, double l3, double rho, Frequency omega);
BlockModel make_ab(double l1, double l2, double l3, double rho, Frequency omega);
BlockModel make_coupled_harper(double l1, double l2, double coupling, Frequency omega);

/// Shift the phase argument of all coefficient functions: theta -> theta + s.
BlockModel shifted_model(const BlockModel& m, double s);

/// max over a theta grid of ||J V(theta) J^{-1} - V^T(-theta)|| + ||J B J^{-1} - B^T||.
/// Requires constant B and orthonormal J.
double verify_J_symmetry(const BlockModel& m, const MatrixXc& J, int grid = 64);

/// max over a theta grid of |f_{E,n}(theta + 1/period_denom) - f_{E,n}(theta)| / (1 + |f|).
double verify_f_periodicity(const BlockModel& m, double E, int n, int period_denom, int grid = 32);

/// Sampled validation: V Hermitian on the real torus, det B(theta + i eps) != 0 on the strip.
void validate_model(const BlockModel& m, int grid = 64, int eps_samples = 5);

/// Named J presets used by the symmetry verifiers.
MatrixXc J_identity(int d);
MatrixXc J_antidiagonal(int d);   // ones on the anti-diagonal
MatrixXc J_xy();                  // diag(1, -1)

}  // namespace qjl
