#pragma once

#include <functional>

#include "qjl/cocycle.hpp"

namespace qjl {

enum class BoundaryCondition { Periodic, Dirichlet };

/// Nonzero complex number in log form: e^{log_mag + i phase_angle}; log_mag = -inf is zero.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double phase_angle = 0.0;

  static LogComplex from(Complex v);
  bool is_zero() const { return !std::isfinite(log_mag); }
  Complex to_complex() const;  // throws if it would overflow
};

/// |a - b| / (1 + |b|), computed without leaving log range.
double log_complex_rel_diff(const LogComplex& a, const LogComplex& b);

/// Finite-volume block operator on n blocks; blocks ordered with phase z+(n-1)w at the
/// top-left and z at the bottom-right.
struct FiniteVolumeOperator {
  int n = 0;
  int d = 1;
  MatrixXc entries;
  BoundaryCondition bc = BoundaryCondition::Periodic;
  ComplexPhase phase;
};

FiniteVolumeOperator assemble(const BlockModel& m, const ComplexPhase& z, int n,
                              BoundaryCondition bc);

/// det(P_n - E) via pivoted LU in log form.
LogComplex log_determinant(const FiniteVolumeOperator& op, double E);
LogComplex log_determinant(const MatrixXc& A);

/// | log|f| - log|det(M_n - I)| - sum_j log|det B(z+jw)| |, with a degenerate flag when
/// both determinants vanish.
struct DetPResidual {
  double residual = 0.0;
  bool degenerate = false;
};
DetPResidual detP_identity_residual(const BlockModel& m, double E, const ComplexPhase& z, int n);

struct GreenEntry {
  Complex value;          // (P_n - E)^{-1}(x, y) by direct solve
  LogComplex minor_mu;    // Cramer numerator: (-1)^{x+y} det(P_n - E with row y, col x deleted)
  LogComplex f;           // det(P_n - E)
  double cramer_rel_err;  // relative gap between value and minor_mu / f
};
GreenEntry green(const FiniteVolumeOperator& op, double E, int x, int y);

/// Poisson-formula residual |u_m - RHS| / (1 + |u_m|) for an eigenfunction sample u of
/// H_theta at energy E on the scalar window [k, k+nd-1]; u(j) indexes scalar sites.
double poisson_residual(const BlockModel& m, double E, double theta, int n, long k, long mm,
                        const std::function<Complex(long)>& u);

struct AvgLogF {
  double value = 0.0;
  long excluded = 0;   // grid points with f = 0
  bool admissible = true;
};
AvgLogF avg_log_f(const BlockModel& m, double E, double eps, int n, int grid,
                  double kappa0 = 0.25);

/// Extend a seed block pair (Phi_{-1}, Phi_0) at scalar window start k to scalar values
/// on [k - d, k + (n+1)d - 1] by the transfer recursion; returns an indexable closure.
std::function<Complex(long)> transfer_eigenfunction(const BlockModel& m, double E, double theta,
                                                    long k, int n,
                                                    const Eigen::VectorXcd& seed);

}  // namespace qjl
