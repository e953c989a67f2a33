#include "qjl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qjl/lyapunov.hpp"
#include "qjl/parallel.hpp"

namespace qjl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double turns) { return {std::cos(kTwoPi * turns), std::sin(kTwoPi * turns)}; }

/// Distance from a point to a union of sorted disjoint closed intervals.
double point_dist(double x, const std::vector<std::pair<double, double>>& iv) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [lo, hi] : iv) {
    if (x < lo)
      best = std::min(best, lo - x);
    else if (x > hi)
      best = std::min(best, x - hi);
    else
      return 0.0;
  }
  return best;
}

/// sup over x in union(a) of dist(x, union(b)); the sup is attained at an endpoint of a
/// or at a midpoint of a gap of b that lies inside an interval of a.
double directed_hausdorff(const std::vector<std::pair<double, double>>& a,
                          const std::vector<std::pair<double, double>>& b) {
  double worst = 0.0;
  for (const auto& [lo, hi] : a) {
    worst = std::max({worst, point_dist(lo, b), point_dist(hi, b)});
    for (size_t j = 0; j + 1 < b.size(); ++j) {
      double mid = 0.5 * (b[j].second + b[j + 1].first);
      if (mid > lo && mid < hi) worst = std::max(worst, point_dist(mid, b));
    }
  }
  return worst;
}
}  // namespace

double SpectrumApprox::total_length() const {
  double s = 0.0;
  for (const auto& [lo, hi] : intervals) s += hi - lo;
  return s;
}

std::vector<double> finite_spectrum(const BlockModel& m, double theta, int n,
                                    BoundaryCondition bc) {
  FiniteVolumeOperator op = assemble(m, ComplexPhase(theta, 0.0), n, bc);
  double herm = (op.entries - op.entries.adjoint()).norm();
  if (herm > 1e-9 * (1.0 + op.entries.norm()))
    throw std::runtime_error("finite_spectrum: assembly is not Hermitian at real phase");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(0.5 * (op.entries + op.entries.adjoint()),
                                             Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end());
  return ev;
}

SpectrumApprox spectrum_union(const BlockModel& m, int n, int theta_grid, double merge_tol) {
  SpectrumApprox out;
  out.n = n;
  out.theta_grid = theta_grid;
  out.merge_tol = merge_tol;
  // With the raw frequency the wrap-around mismatch acts as an O(1) defect whose bound
  // states sweep through true spectral gaps, and at fixed boundary phase the extended
  // branches barely move with theta, so the plain theta-union neither avoids spurious
  // points nor fills the bands. Rounding the frequency to a multiple of 1/n removes the
  // seam, and a Floquet twist on the corner blocks sweeps each band; the commensurate
  // spectrum is periodic in theta with period gcd(round(n w), n)/n, so the phase only
  // needs to cover that fundamental period.
  BlockModel mc = m;
  long g0 = n;
  for (int c = 0; c < mc.omega.b(); ++c) {
    long p = std::lround(n * mc.omega.omega[c]);
    mc.omega.omega[c] = static_cast<double>(p) / n;
    g0 = std::gcd(g0, std::labs(p));
  }
  const double period = static_cast<double>(g0) / n;
  const int d = m.d;
  std::vector<std::vector<double>> slabs(theta_grid);
  parallel_for(theta_grid, [&](long i) {
    double turns = static_cast<double>(i) / theta_grid;
    FiniteVolumeOperator op =
        assemble(mc, ComplexPhase(period * turns, 0.0), n, BoundaryCondition::Periodic);
    Complex tw = unit(turns);
    op.entries.topRightCorner(d, d) *= tw;
    op.entries.bottomLeftCorner(d, d) *= std::conj(tw);
    double herm = (op.entries - op.entries.adjoint()).norm();
    if (herm > 1e-9 * (1.0 + op.entries.norm()))
      throw std::runtime_error("spectrum_union: twisted assembly is not Hermitian");
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(0.5 * (op.entries + op.entries.adjoint()),
                                               Eigen::EigenvaluesOnly);
    slabs[i].assign(es.eigenvalues().data(),
                    es.eigenvalues().data() + es.eigenvalues().size());
  });
  for (auto& s : slabs)
    out.eigenvalues.insert(out.eigenvalues.end(), s.begin(), s.end());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  for (double e : out.eigenvalues) {
    if (!out.intervals.empty() && e - out.intervals.back().second <= merge_tol)
      out.intervals.back().second = std::max(out.intervals.back().second, e);
    else
      out.intervals.emplace_back(e, e);
  }
  return out;
}

double interval_hausdorff(const std::vector<std::pair<double, double>>& a,
                          const std::vector<std::pair<double, double>>& b) {
  if (a.empty() || b.empty())
    return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double aubry_duality_gap(double lambda, const Frequency& omega, int n, int grid) {
  if (lambda <= 0.0 || lambda == 1.0)
    throw std::invalid_argument("aubry_duality_gap: lambda > 0, lambda != 1");
  // Cover tolerance 1e-2 merges the grid-sampling gaps of each eigenvalue sweep, so the
  // Hausdorff distance measures set discrepancy rather than sampling noise.
  SpectrumApprox direct = spectrum_union(make_amo(lambda, omega), n, grid, 1e-2);
  SpectrumApprox dual = spectrum_union(make_amo(1.0 / lambda, omega), n, grid, 1e-2);
  std::vector<std::pair<double, double>> scaled;
  for (const auto& [lo, hi] : dual.intervals) scaled.emplace_back(lambda * lo, lambda * hi);
  return interval_hausdorff(direct.intervals, scaled);
}

namespace {
/// Shared assembler for the two stacked-bilayer identities. The full Hamiltonian acts on
/// per-site pairs (U1_m, U2_m); it is off-diagonal in that splitting with the U2 -> U1
/// block carrying diag block Cm(m), sub-diagonal block Sub, super-diagonal block Sup.
double bilayer_square_residual(int n, const std::function<MatrixXc(int)>& Cm,
                               const MatrixXc& Sub, const MatrixXc& Sup) {
  const int N = 2 * n;
  MatrixXc Hhat = MatrixXc::Zero(N, N);  // U2 -> U1
  for (int m = 0; m < n; ++m) {
    int mp = (m + 1) % n, mm = (m + n - 1) % n;
    Hhat.block(2 * m, 2 * m, 2, 2) = Cm(m);
    Hhat.block(2 * m, 2 * mm, 2, 2) = Sub;
    Hhat.block(2 * m, 2 * mp, 2, 2) = Sup;
  }
  MatrixXc H = MatrixXc::Zero(2 * N, 2 * N);
  H.topRightCorner(N, N) = Hhat;
  H.bottomLeftCorner(N, N) = Hhat.adjoint();
  MatrixXc H2 = H * H;
  MatrixXc rhs = MatrixXc::Zero(2 * N, 2 * N);
  rhs.topLeftCorner(N, N) = Hhat * Hhat.adjoint();
  rhs.bottomRightCorner(N, N) = Hhat.adjoint() * Hhat;
  return (H2 - rhs).norm() / H2.norm();
}
}  // namespace

double aa_square_residual(double l1, double l2, double l3, double rho, const Frequency& omega,
                          double theta, int n) {
  if (n < 3) throw std::invalid_argument("aa_square_residual: n >= 3");
  double w = omega.omega[0];
  auto c = [&](int m) { return l1 + l3 * unit(theta + m * w); };
  auto d = [&](int m) { return l1 + l3 * unit(-(theta + m * w)); };
  // Per-site vectors U1_m = (u^1_{m,A}, u^2_{m,B}), U2_m = (u^1_{m,B}, u^2_{m,A});
  // rows below are the four scalar hopping equations grouped by sublattice.
  auto Cm = [&](int m) {
    MatrixXc C(2, 2);
    C << c(m), rho, rho, d(m);
    return C;
  };
  MatrixXc Sub = MatrixXc::Zero(2, 2), Sup = MatrixXc::Zero(2, 2);
  Sub(0, 0) = l2;
  Sup(1, 1) = l2;
  return bilayer_square_residual(n, Cm, Sub, Sup);
}

double ab_square_residual(double l1, double l2, double l3, double rho, const Frequency& omega,
                          double theta, int n) {
  if (n < 3) throw std::invalid_argument("ab_square_residual: n >= 3");
  double w = omega.omega[0];
  auto d = [&](int m) { return l1 + l3 * unit(-(theta + m * w)); };
  // U1_m = (u^2_{m,B}, u^1_{m,B}), U2_m = (u^2_{m,A}, u^1_{m,A}).
  auto Cm = [&](int m) {
    MatrixXc C(2, 2);
    C << d(m), 0.0, rho, unit(-w / 3.0) * d(m - 1);
    return C;
  };
  MatrixXc Sub = l2 * MatrixXc::Identity(2, 2);
  MatrixXc Sup = MatrixXc::Zero(2, 2);
  return bilayer_square_residual(n, Cm, Sub, Sup);
}

SlopeIntercept graphene_large_eps_slope(const BlockModel& m, double E, double eps_hi, long n,
                                        int grid) {
  const double h = 0.05;
  std::vector<double> xs, ys;
  for (int k = 3; k >= 0; --k) {
    double eps = eps_hi - k * h;
    if (!m.strip_contains(eps))
      throw std::invalid_argument("graphene_large_eps_slope: eps outside model strip");
    LyapunovProfile prof = finite_scale_exponents(m, E, eps, n, grid);
    xs.push_back(eps);
    ys.push_back(prof.Lsum[1]);
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  SlopeIntercept out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  return out;
}

}  // namespace qjl
