#include "qjl/finite_volume.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "qjl/lyapunov.hpp"
#include "qjl/parallel.hpp"

namespace qjl {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a > kPi) a -= 2.0 * kPi;
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}
}  // namespace

LogComplex LogComplex::from(Complex v) {
  LogComplex lc;
  if (v == Complex(0.0, 0.0)) return lc;
  lc.log_mag = std::log(std::abs(v));
  lc.phase_angle = std::arg(v);
  return lc;
}

Complex LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  if (log_mag > 690.0) throw std::runtime_error("LogComplex::to_complex: overflow");
  return std::exp(log_mag) * Complex(std::cos(phase_angle), std::sin(phase_angle));
}

double log_complex_rel_diff(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (b.is_zero()) return std::exp(a.log_mag);  // |a| / 1, possibly inf
  if (a.is_zero()) return std::exp(b.log_mag) / (1.0 + std::exp(b.log_mag));
  // |a - b| / (1 + |b|) = |b| |a/b - 1| / (1 + |b|)
  Complex ratio = std::exp(std::min(a.log_mag - b.log_mag, 700.0)) *
                  Complex(std::cos(a.phase_angle - b.phase_angle), std::sin(a.phase_angle - b.phase_angle));
  double scale = b.log_mag > 300.0 ? 1.0 : std::exp(b.log_mag) / (1.0 + std::exp(b.log_mag));
  return std::abs(ratio - 1.0) * scale;
}

FiniteVolumeOperator assemble(const BlockModel& m, const ComplexPhase& z, int n,
                              BoundaryCondition bc) {
  if (n < 3) throw std::invalid_argument("periodic assembly requires n >= 3");
  if (!m.strip_contains(z)) throw std::invalid_argument("assemble: eps outside model strip");
  const int d = m.d;
  FiniteVolumeOperator op;
  op.n = n;
  op.d = d;
  op.bc = bc;
  op.phase = z;
  op.entries = MatrixXc::Zero(n * d, n * d);
  auto at = [&](double s) { return z.shifted(m.omega, s); };
  for (int i = 0; i < n; ++i) {
    int s = n - 1 - i;  // block row i holds lattice block s
    op.entries.block(i * d, i * d, d, d) = eval(m.V, at(s));
    if (i + 1 < n) op.entries.block(i * d, (i + 1) * d, d, d) = eval(m.Bstar, at(s));
    if (i > 0) op.entries.block(i * d, (i - 1) * d, d, d) = eval(m.B, at(s + 1));
  }
  if (bc == BoundaryCondition::Periodic) {
    op.entries.block(0, (n - 1) * d, d, d) += eval(m.B, at(0));
    op.entries.block((n - 1) * d, 0, d, d) += eval(m.Bstar, at(0));
  }
  return op;
}

LogComplex log_determinant(const MatrixXc& A) {
  const auto nrows = A.rows();
  Eigen::PartialPivLU<MatrixXc> lu(A);
  double scale = A.norm() / static_cast<double>(nrows);
  LogComplex out;
  out.log_mag = 0.0;
  out.phase_angle = lu.permutationP().determinant() < 0 ? kPi : 0.0;
  for (Eigen::Index i = 0; i < nrows; ++i) {
    Complex u = lu.matrixLU()(i, i);
    double au = std::abs(u);
    if (au < 1e-300 || au < 1e-14 * scale) {  // treat as an exact zero of the determinant
      out.log_mag = -std::numeric_limits<double>::infinity();
      out.phase_angle = 0.0;
      return out;
    }
    out.log_mag += std::log(au);
    out.phase_angle += std::arg(u);
  }
  out.phase_angle = wrap_angle(out.phase_angle);
  return out;
}

LogComplex log_determinant(const FiniteVolumeOperator& op, double E) {
  MatrixXc A = op.entries;
  A.diagonal().array() -= E;
  return log_determinant(A);
}

DetPResidual detP_identity_residual(const BlockModel& m, double E, const ComplexPhase& z, int n) {
  if (n < 3) throw std::invalid_argument("detP_identity_residual: n >= 3");
  LogComplex f = log_determinant(assemble(m, z, n, BoundaryCondition::Periodic), E);
  // det(M - I) = sum_k (-1)^k tr(wedge^k M): each trace comes from its own renormalized
  // wedge product, so the identity stays accurate when the monodromy spans e^{+-nL}.
  const int D2 = 2 * m.d;
  std::vector<ScaledMatrix> W(D2 + 1);
  for (int k = 1; k <= D2; ++k)
    W[k] = ScaledMatrix::identity(static_cast<int>(index_subsets(D2, k).size()));
  for (int j = 0; j < n; ++j) {
    MatrixXc step = transfer_matrix(m, E, z.shifted(m.omega, j));
    for (int k = 1; k <= D2; ++k) {
      W[k].left_multiply(wedge_power(step, k));
      W[k].renormalize();
    }
  }
  std::vector<double> lg(D2 + 1, 0.0);
  std::vector<Complex> ph(D2 + 1, Complex(1.0, 0.0));
  for (int k = 1; k <= D2; ++k) {
    Complex tr = W[k].unit.trace();
    lg[k] = std::abs(tr) > 0.0 ? W[k].log_scale + std::log(std::abs(tr))
                               : -std::numeric_limits<double>::infinity();
    ph[k] = std::abs(tr) > 0.0 ? tr / std::abs(tr) : Complex(0.0, 0.0);
  }
  double top = 0.0;  // the k = 0 term contributes e^0
  for (int k = 1; k <= D2; ++k) top = std::max(top, lg[k]);
  Complex sum = std::exp(-top);
  for (int k = 1; k <= D2; ++k)
    if (std::isfinite(lg[k])) sum += (k % 2 ? -1.0 : 1.0) * std::exp(lg[k] - top) * ph[k];
  LogComplex dMI;
  if (std::abs(sum) > 0.0) {
    dMI.log_mag = top + std::log(std::abs(sum));
    dMI.phase_angle = std::arg(sum);
  }
  double sum_logdetB = 0.0;
  for (int j = 0; j < n; ++j)
    sum_logdetB += std::log(std::abs(eval(m.B, z.shifted(m.omega, j)).determinant()));
  DetPResidual out;
  if (f.is_zero() && dMI.is_zero()) {
    out.degenerate = true;
    return out;
  }
  out.residual = std::fabs(f.log_mag - dMI.log_mag - sum_logdetB);
  return out;
}

GreenEntry green(const FiniteVolumeOperator& op, double E, int x, int y) {
  const int N = op.n * op.d;
  if (x < 0 || y < 0 || x >= N || y >= N) throw std::invalid_argument("green: index out of range");
  MatrixXc A = op.entries;
  A.diagonal().array() -= E;
  GreenEntry g;
  g.f = log_determinant(A);
  if (g.f.is_zero()) throw std::runtime_error("green: P_n - E is singular");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(N);
  rhs[y] = 1.0;
  g.value = A.partialPivLu().solve(rhs)[x];
  // Cramer numerator: cofactor expansion gives A^{-1}(x,y) = (-1)^{x+y} det(A del row y, col x)/det A
  MatrixXc sub(N - 1, N - 1);
  for (int r = 0, rr = 0; r < N; ++r) {
    if (r == y) continue;
    for (int c = 0, cc = 0; c < N; ++c) {
      if (c == x) continue;
      sub(rr, cc) = A(r, c);
      ++cc;
    }
    ++rr;
  }
  g.minor_mu = log_determinant(sub);
  if ((x + y) % 2 != 0) g.minor_mu.phase_angle = wrap_angle(g.minor_mu.phase_angle + kPi);
  Complex cramer = g.minor_mu.is_zero()
                       ? Complex(0.0, 0.0)
                       : std::exp(g.minor_mu.log_mag - g.f.log_mag) *
                             Complex(std::cos(g.minor_mu.phase_angle - g.f.phase_angle),
                                     std::sin(g.minor_mu.phase_angle - g.f.phase_angle));
  g.cramer_rel_err = std::abs(cramer - g.value) / std::max({std::abs(g.value), std::abs(cramer), 1e-30});
  if (g.cramer_rel_err > 1e-8)
    throw std::runtime_error("green: Cramer ratio disagrees with direct solve");
  return g;
}

std::function<Complex(long)> transfer_eigenfunction(const BlockModel& m, double E, double theta,
                                                    long k, int n, const Eigen::VectorXcd& seed) {
  const int d = m.d;
  if (k % d != 0) throw std::invalid_argument("transfer_eigenfunction: k must be a multiple of d");
  if (seed.size() != 2 * d) throw std::invalid_argument("transfer_eigenfunction: seed size must be 2d");
  const long kb = k / d;
  ComplexPhase z0 = ComplexPhase(theta, 0.0).shifted(m.omega, static_cast<double>(kb));
  // seed = (Phi_{-1}, Phi_0) at the window origin; components in descending scalar order.
  Eigen::VectorXcd psi(2 * d);
  psi.head(d) = eval(m.B, z0) * seed.tail(d);
  psi.tail(d) = seed.head(d);
  std::vector<Eigen::VectorXcd> phi(n + 2);  // phi[l+1] = Phi_l for l = -1..n
  phi[0] = seed.head(d);
  phi[1] = seed.tail(d);
  for (int l = 1; l <= n; ++l) {
    psi = transfer_matrix(m, E, z0.shifted(m.omega, static_cast<double>(l - 1))) * psi;
    phi[l + 1] = eval(m.B, z0.shifted(m.omega, static_cast<double>(l))).partialPivLu().solve(psi.head(d));
  }
  auto values = std::make_shared<std::vector<Complex>>((n + 2) * d);
  for (int l = -1; l <= n; ++l)
    for (int r = 0; r < d; ++r)
      (*values)[(l + 1) * d + (d - 1 - r)] = phi[l + 1][r];
  long lo = k - d;
  return [values, lo, total = static_cast<long>(values->size())](long j) -> Complex {
    long idx = j - lo;
    if (idx < 0 || idx >= total) throw std::out_of_range("eigenfunction window");
    return (*values)[idx];
  };
}

double poisson_residual(const BlockModel& m, double E, double theta, int n, long k, long mm,
                        const std::function<Complex(long)>& u) {
  const int d = m.d;
  if (k % d != 0)
    throw std::invalid_argument("poisson_residual: window start k must be a multiple of d");
  if (mm < k || mm > k + static_cast<long>(n) * d - 1)
    throw std::invalid_argument("poisson_residual: m outside window");
  const long kb = k / d;
  ComplexPhase z0 = ComplexPhase(theta, 0.0).shifted(m.omega, static_cast<double>(kb));
  FiniteVolumeOperator op = assemble(m, z0, n, BoundaryCondition::Periodic);
  const int N = n * d;
  auto block_of = [&](long l) {  // Phi_l as a d-vector in descending scalar order
    Eigen::VectorXcd v(d);
    for (int r = 0; r < d; ++r) v[r] = u(k + l * d + (d - 1 - r));
    return v;
  };
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(N);
  rhs.head(d) = eval(m.B, z0) * block_of(0) -
                eval(m.B, z0.shifted(m.omega, static_cast<double>(n))) * block_of(n);
  rhs.tail(d) = eval(m.Bstar, z0) * (block_of(n - 1) - block_of(-1));
  MatrixXc A = op.entries;
  A.diagonal().array() -= E;
  Eigen::PartialPivLU<MatrixXc> lu(A);
  if (log_determinant(A).is_zero()) throw std::runtime_error("poisson_residual: P_n - E singular");
  Eigen::VectorXcd X = lu.solve(rhs);
  long l = (mm - k) / d, c = (mm - k) % d;
  long row = (n - 1 - l) * d + (d - 1 - c);
  Complex um = u(mm);
  return std::abs(um - X[row]) / (1.0 + std::abs(um));
}

AvgLogF avg_log_f(const BlockModel& m, double E, double eps, int n, int grid, double kappa0) {
  AvgLogF out;
  double dist = 0.0;
  for (Eigen::Index i = 0; i < m.omega.omega.size(); ++i)
    dist = std::max(dist, torus_dist(static_cast<double>(n) * m.omega.omega[i]));
  out.admissible = dist <= kappa0;
  std::vector<double> vals;
  vals.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    ComplexPhase z = grid_phase(m, eps, i, grid);
    LogComplex f = log_determinant(assemble(m, z, n, BoundaryCondition::Periodic), E);
    if (f.is_zero())
      ++out.excluded;
    else
      vals.push_back(f.log_mag / n);
  }
  if (!vals.empty()) out.value = pairwise_sum(vals) / static_cast<double>(vals.size());
  return out;
}

}  // namespace qjl
