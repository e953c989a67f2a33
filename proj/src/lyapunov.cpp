#include "qjl/lyapunov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qjl/parallel.hpp"

namespace qjl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double log_op_norm_of(const MatrixXc& A) {
  Eigen::JacobiSVD<MatrixXc> svd(A);
  return std::log(svd.singularValues()(0));
}

// log ||wedge^j M_{n,E}(z)|| for a single j.
double log_wedge_norm_single(const BlockModel& m, double E, const ComplexPhase& z, long n, int j) {
  ScaledMatrix P = ScaledMatrix::identity(j == 1 ? 2 * m.d : static_cast<int>(index_subsets(2 * m.d, j).size()));
  for (long t = 0; t < n; ++t) {
    MatrixXc M = transfer_matrix(m, E, z.shifted(m.omega, static_cast<double>(t)));
    P.left_multiply(j == 1 ? M : wedge_power(M, j));
  }
  return P.log_op_norm();
}
}  // namespace

Eigen::VectorXd log_wedge_norms(const BlockModel& m, double E, const ComplexPhase& z, long n) {
  const int D = 2 * m.d;
  std::vector<ScaledMatrix> P;
  P.reserve(D);
  for (int j = 1; j <= D; ++j)
    P.push_back(ScaledMatrix::identity(static_cast<int>(index_subsets(D, j).size())));
  for (long t = 0; t < n; ++t) {
    MatrixXc M = transfer_matrix(m, E, z.shifted(m.omega, static_cast<double>(t)));
    P[0].left_multiply(M);
    for (int j = 2; j <= D; ++j) P[j - 1].left_multiply(wedge_power(M, j));
  }
  Eigen::VectorXd out(D);
  for (int j = 1; j <= D; ++j) out[j - 1] = P[j - 1].log_op_norm();
  return out;
}

ComplexPhase grid_phase(const BlockModel& m, double eps, int i, int grid) {
  const int b = m.b;
  Eigen::VectorXd th(b), ep(b);
  ep.setConstant(eps);
  th[0] = static_cast<double>(i) / grid;
  static const double alphas[] = {0.6180339887498949, 0.41421356237309515};  // rank-1 lattice generators
  for (int k = 1; k < b; ++k) {
    double x = i * alphas[(k - 1) % 2];
    th[k] = x - std::floor(x);
  }
  return ComplexPhase(std::move(th), std::move(ep));
}

LyapunovProfile finite_scale_exponents(const BlockModel& m, double E, double eps, long n,
                                       int grid, int threads) {
  if (n < 1 || grid < 1) throw std::invalid_argument("finite_scale_exponents: n, grid >= 1");
  if (!m.strip_contains(eps))
    throw std::invalid_argument("finite_scale_exponents: eps outside model strip");
  const int D = 2 * m.d;
  std::vector<Eigen::VectorXd> per_theta(grid);
  parallel_for(grid, [&](long i) {
    per_theta[i] = log_wedge_norms(m, E, grid_phase(m, eps, static_cast<int>(i), grid), n);
  }, threads);

  LyapunovProfile prof;
  prof.n = n;
  prof.eps = eps;
  prof.grid = grid;
  prof.Lsum.resize(D);
  prof.L.resize(D);
  std::vector<double> comp(grid);
  for (int j = 0; j < D; ++j) {
    for (int i = 0; i < grid; ++i) comp[i] = per_theta[i][j];
    prof.Lsum[j] = pairwise_sum(comp) / (static_cast<double>(grid) * n);
  }
  for (int j = 0; j < D; ++j) prof.L[j] = prof.Lsum[j] - (j ? prof.Lsum[j - 1] : 0.0);
  return prof;
}

AccelerationEstimate acceleration(const BlockModel& m, double E, int j, double eps0, double h,
                                  long n, int grid, int threads) {
  if (m.b != 1) throw std::invalid_argument("acceleration: b = 1 only");
  if (j < 1 || j > 2 * m.d) throw std::invalid_argument("acceleration: 1 <= j <= 2d");
  if (!(h > 0.0) || !m.strip_contains(eps0) || !m.strip_contains(eps0 + h))
    throw std::invalid_argument("acceleration: need 0 < h with eps0, eps0+h in the strip");
  auto lo = finite_scale_exponents(m, E, eps0, n, grid, threads);
  auto hi = finite_scale_exponents(m, E, eps0 + h, n, grid, threads);
  AccelerationEstimate a;
  a.j = j;
  a.eps0 = eps0;
  a.h = h;
  a.kappa_raw = (hi.Lsum[j - 1] - lo.Lsum[j - 1]) / (kTwoPi * h);
  a.kappa_rounded = std::lround(a.kappa_raw);
  a.quantization_gap = std::fabs(a.kappa_raw - static_cast<double>(a.kappa_rounded));
  a.noisy = a.quantization_gap > 0.25;
  return a;
}

std::vector<std::pair<double, double>> complexified_profile(const BlockModel& m, double E, int j,
                                                            const std::vector<double>& eps_list,
                                                            long n, int grid, int threads) {
  if (m.b != 1) throw std::invalid_argument("complexified_profile: b = 1 only");
  for (size_t i = 1; i < eps_list.size(); ++i)
    if (eps_list[i] < eps_list[i - 1]) throw std::invalid_argument("complexified_profile: eps_list must be sorted");
  std::vector<std::pair<double, double>> out;
  out.reserve(eps_list.size());
  for (double e : eps_list) {
    auto prof = finite_scale_exponents(m, E, e, n, grid, threads);
    out.emplace_back(e, prof.Lsum[j - 1]);
  }
  return out;
}

LdtReport ldt_deviation_fraction(const BlockModel& m, double E, double eps, long n, int grid,
                                 double delta, int threads) {
  if (grid < 100) throw std::invalid_argument("ldt_deviation_fraction: grid >= 100");
  std::vector<double> x(grid);
  parallel_for(grid, [&](long i) {
    x[i] = log_wedge_norm_single(m, E, grid_phase(m, eps, static_cast<int>(i), grid), n, m.d) / n;
  }, threads);
  double avg = pairwise_sum(x) / grid;
  LdtReport rep;
  rep.threshold = avg - std::pow(static_cast<double>(n), -delta);
  std::vector<bool> bad(grid);
  long nbad = 0;
  for (int i = 0; i < grid; ++i) {
    bad[i] = x[i] <= rep.threshold;
    if (bad[i]) ++nbad;
  }
  rep.fraction = static_cast<double>(nbad) / grid;
  long clusters = 0;
  for (int i = 0; i < grid; ++i) {
    bool prev = bad[(i + grid - 1) % grid];
    if (bad[i] && !prev) ++clusters;
  }
  if (nbad == grid) clusters = 1;
  rep.clusters = clusters;
  return rep;
}

AvalancheReport avalanche_check(const std::vector<MatrixXc>& g, double eps_ap, double kappa_ap,
                                double C0) {
  AvalancheReport rep;
  const size_t n = g.size();
  if (n < 2) throw std::invalid_argument("avalanche_check: need at least 2 blocks");
  std::vector<double> log_norm(n), gap_ratio(n);
  for (size_t i = 0; i < n; ++i) {
    if (g[i].norm() == 0.0) throw std::invalid_argument("avalanche_check: zero block");
    Eigen::JacobiSVD<MatrixXc> svd(g[i]);
    const auto& s = svd.singularValues();
    log_norm[i] = std::log(s(0));
    gap_ratio[i] = s(0) / s(s.size() - 1 > 0 ? 1 : 0);
  }
  bool ok = true;
  for (size_t i = 0; i < n; ++i)
    if (!(gap_ratio[i] >= 1.0 / kappa_ap)) ok = false;
  std::vector<double> log_pair(n);
  for (size_t i = 1; i < n; ++i) {
    log_pair[i] = log_op_norm_of(g[i] * g[i - 1]);
    if (!(log_pair[i] - log_norm[i] - log_norm[i - 1] >= std::log(eps_ap))) ok = false;
  }
  rep.applicable = ok;
  ScaledMatrix P = ScaledMatrix::identity(static_cast<int>(g[0].rows()));
  for (size_t i = 0; i < n; ++i) P.left_multiply(g[i]);
  double lhs = P.log_op_norm();
  for (size_t i = 1; i + 1 < n; ++i) lhs += log_norm[i];
  for (size_t i = 1; i < n; ++i) lhs -= log_pair[i];
  rep.lhs = std::fabs(lhs);
  rep.bound = C0 * static_cast<double>(n) * kappa_ap / (eps_ap * eps_ap);
  return rep;
}

}  // namespace qjl
