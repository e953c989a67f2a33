#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "qjl/torus.hpp"

namespace qjl {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;

/// Matrix-valued trigonometric polynomial F(theta) = sum_k C_k e^{2 pi i k.theta} on T^b,
/// evaluated on the complexified torus by the same finite sum.
struct TrigMatrixPolynomial {
  int d = 1;  // matrix dimension
  int b = 1;  // torus dimension
  bool hermitian = false;
  std::map<std::vector<int>, MatrixXc> coeffs;

  TrigMatrixPolynomial() = default;
  TrigMatrixPolynomial(int dim, int torus_dim) : d(dim), b(torus_dim) {}

  /// Add C at frequency k (accumulates into an existing coefficient).
  void add(const std::vector<int>& k, const MatrixXc& C);
  void add(int k, const MatrixXc& C) { add(std::vector<int>{k}, C); }
  void add_entry(int k, int row, int col, Complex value);

  int degree() const;  // max sup-norm |k| over stored coefficients
  bool is_constant() const;

  /// Check coeffs[-k] = coeffs[k]^* (Hermitian on the real torus).
  bool coefficients_hermitian(double tol = 1e-12) const;
};

MatrixXc eval(const TrigMatrixPolynomial& F, const ComplexPhase& z);

/// Coefficient-level analytic extension of theta -> F(theta)^* off the real torus.
TrigMatrixPolynomial star_extension(const TrigMatrixPolynomial& F);

/// Scalar helpers (d = 1, b = 1).
TrigMatrixPolynomial scalar_constant(Complex c);
TrigMatrixPolynomial scalar_cosine(double amplitude);                    // amplitude * 2cos(2 pi theta)
TrigMatrixPolynomial scalar_cosine_shifted(double amplitude, double s);  // amplitude * 2cos(2 pi (theta + s))

/// Substitute theta -> theta + s (phase shift by a constant vector), b = 1 overload.
TrigMatrixPolynomial phase_shift(const TrigMatrixPolynomial& F, double s);

}  // namespace qjl
