#pragma once

#include "qjl/models.hpp"

namespace qjl {

/// Matrix stored as e^{log_scale} * unit with ||unit|| kept in [1/2, 2].
struct ScaledMatrix {
  MatrixXc unit;
  double log_scale = 0.0;

  static ScaledMatrix identity(int n);
  void renormalize();
  void left_multiply(const MatrixXc& M);  // this <- M * this, then renormalize
  double log_norm() const;                // log of the Frobenius norm
  double log_op_norm() const;             // log of the largest singular value
  /// Dense matrix e^{log_scale} * unit; throws if it would overflow doubles.
  MatrixXc to_dense() const;
};

/// One-step transfer matrix [[(E - V)B^{-1}, -Bstar], [B^{-1}, 0]] at z.
MatrixXc transfer_matrix(const BlockModel& m, double E, const ComplexPhase& z);

/// Companion one-step matrix of the scalar long-range recursion.
MatrixXc longrange_step(const LongRangeModel& m, double E, const ComplexPhase& z);

/// M_{n,E}(z) = M_E(z+(n-1)w) ... M_E(z), renormalized every step.
ScaledMatrix monodromy(const BlockModel& m, double E, const ComplexPhase& z, long n);

/// ||M* Omega M - Omega|| with Omega = [[0, I], [-I, 0]].
double symplectic_residual(const MatrixXc& M);

/// ||M_E(z) - diag(B, I) prod_{j=d-1}^{0} A_E(z + j w/d) diag(B^{-1}, I)||.
double block_factorization_residual(const LongRangeModel& m, double E, const ComplexPhase& z);

/// Lexicographically ordered j-element subsets of {0..m-1}.
std::vector<std::vector<int>> index_subsets(int m, int j);

/// j-th exterior power: entries are j x j minors det A[I, J] in lex subset order.
MatrixXc wedge_power(const MatrixXc& A, int j);

}  // namespace qjl
