#include "qjl/cocycle.hpp"

#include <cmath>
#include <stdexcept>

namespace qjl {

ScaledMatrix ScaledMatrix::identity(int n) {
  ScaledMatrix s;
  s.unit = MatrixXc::Identity(n, n);
  s.log_scale = 0.0;
  s.renormalize();
  return s;
}

void ScaledMatrix::renormalize() {
  double nrm = unit.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw std::runtime_error("ScaledMatrix: non-finite or zero norm during renormalization");
  unit /= nrm;
  log_scale += std::log(nrm);
  // ||unit|| = 1 after this, inside the [1/2, 2] window by construction
}

void ScaledMatrix::left_multiply(const MatrixXc& M) {
  unit = M * unit;
  renormalize();
}

double ScaledMatrix::log_norm() const { return log_scale + std::log(unit.norm()); }

double ScaledMatrix::log_op_norm() const {
  Eigen::JacobiSVD<MatrixXc> svd(unit);
  return log_scale + std::log(svd.singularValues()(0));
}

MatrixXc ScaledMatrix::to_dense() const {
  if (log_scale > 690.0) throw std::runtime_error("ScaledMatrix::to_dense: magnitude overflows double range");
  return std::exp(log_scale) * unit;
}

MatrixXc transfer_matrix(const BlockModel& m, double E, const ComplexPhase& z) {
  if (!m.strip_contains(z))
    throw std::invalid_argument("transfer_matrix: eps outside the model strip (" + m.label + ")");
  const int d = m.d;
  MatrixXc Bz = eval(m.B, z);
  MatrixXc Bsz = eval(m.Bstar, z);
  MatrixXc Vz = eval(m.V, z);
  Eigen::PartialPivLU<MatrixXc> lu(Bz);
  MatrixXc Binv = lu.inverse();
  double cond = Bz.norm() * Binv.norm();
  if (!std::isfinite(cond) || cond > 1e14) {
    throw std::runtime_error("transfer_matrix: B(z) numerically singular at theta=" +
                             std::to_string(z.theta[0]) + ", eps=" + std::to_string(z.eps[0]));
  }
  MatrixXc M(2 * d, 2 * d);
  M.topLeftCorner(d, d) = (E * MatrixXc::Identity(d, d) - Vz) * Binv;
  M.topRightCorner(d, d) = -Bsz;
  M.bottomLeftCorner(d, d) = Binv;
  M.bottomRightCorner(d, d).setZero();
  return M;
}

MatrixXc longrange_step(const LongRangeModel& m, double E, const ComplexPhase& z) {
  const int d = m.d;
  const Complex vmd = std::conj(m.v[d - 1]);  // v_{-d}
  Complex g = eval(m.g, z)(0, 0);
  MatrixXc A = MatrixXc::Zero(2 * d, 2 * d);
  // first row: (-v_{1-d}, ..., -v_{-1}, E - g, -v_1, ..., -v_d) / v_{-d}
  for (int c = 0; c <= d - 2; ++c) A(0, c) = -std::conj(m.v[d - 2 - c]) / vmd;
  A(0, d - 1) = (E - g) / vmd;
  for (int c = d; c <= 2 * d - 1; ++c) A(0, c) = -m.v[c - d] / vmd;
  for (int r = 1; r < 2 * d; ++r) A(r, r - 1) = 1.0;
  return A;
}

ScaledMatrix monodromy(const BlockModel& m, double E, const ComplexPhase& z, long n) {
  if (n < 1) throw std::invalid_argument("monodromy: n >= 1");
  ScaledMatrix P = ScaledMatrix::identity(2 * m.d);
  for (long j = 0; j < n; ++j) {
    try {
      P.left_multiply(transfer_matrix(m, E, z.shifted(m.omega, static_cast<double>(j))));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("monodromy: step " + std::to_string(j) + ": " + e.what());
    }
  }
  return P;
}

double symplectic_residual(const MatrixXc& M) {
  const int d2 = static_cast<int>(M.rows());
  if (d2 % 2 != 0 || M.cols() != d2) throw std::invalid_argument("symplectic_residual: need even square");
  const int d = d2 / 2;
  MatrixXc Omega = MatrixXc::Zero(d2, d2);
  Omega.topRightCorner(d, d) = MatrixXc::Identity(d, d);
  Omega.bottomLeftCorner(d, d) = -MatrixXc::Identity(d, d);
  return (M.adjoint() * Omega * M - Omega).norm();
}

double block_factorization_residual(const LongRangeModel& m, double E, const ComplexPhase& z) {
  BlockModel blk = longrange_to_block(m);
  const int d = m.d;
  MatrixXc M = transfer_matrix(blk, E, z);
  MatrixXc P = MatrixXc::Identity(2 * d, 2 * d);
  for (int j = 0; j < d; ++j)  // j ascending applies factors j = d-1 .. 0 on the left
    P = longrange_step(m, E, z.shifted(m.omega, static_cast<double>(j) / d)) * P;
  MatrixXc Bz = eval(blk.B, z);
  MatrixXc D = MatrixXc::Identity(2 * d, 2 * d);
  D.topLeftCorner(d, d) = Bz;
  MatrixXc Dinv = MatrixXc::Identity(2 * d, 2 * d);
  Dinv.topLeftCorner(d, d) = Bz.partialPivLu().inverse();
  return (M - D * P * Dinv).norm();
}

std::vector<std::vector<int>> index_subsets(int m, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(j);
  for (int i = 0; i < j; ++i) cur[i] = i;
  if (j == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(cur);
    int i = j - 1;
    while (i >= 0 && cur[i] == m - j + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int t = i + 1; t < j; ++t) cur[t] = cur[t - 1] + 1;
  }
  return out;
}

MatrixXc wedge_power(const MatrixXc& A, int j) {
  const int m = static_cast<int>(A.rows());
  if (j < 1 || j > m) throw std::invalid_argument("wedge_power: need 1 <= j <= dim");
  if (j == 1) return A;
  auto subs = index_subsets(m, j);
  const int N = static_cast<int>(subs.size());
  MatrixXc W(N, N);
  MatrixXc sub(j, j);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) {
      for (int a = 0; a < j; ++a)
        for (int b = 0; b < j; ++b) sub(a, b) = A(subs[r][a], subs[c][b]);
      W(r, c) = sub.determinant();
    }
  }
  return W;
}

}  // namespace qjl
