#include "qjl/duality.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qjl/cocycle.hpp"
#include "qjl/parallel.hpp"

namespace qjl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double turns) { return {std::cos(kTwoPi * turns), std::sin(kTwoPi * turns)}; }

double skew_phase(double x, double y, double pq, long m) {
  return x + m * y + static_cast<double>(m) * (m - 1) * pq;
}
}  // namespace

double skewshift_avg_lyapunov(double lambda, long p, long q, const Frequency& y, double E,
                              long ell, int x_grid, int threads) {
  if (q < 3 || std::gcd(std::labs(p), q) != 1)
    throw std::invalid_argument("skewshift_avg_lyapunov: p/q must be reduced with q >= 3");
  const double y0 = y.omega[0];
  const double pq = static_cast<double>(p) / q;
  std::vector<double> slots(x_grid);
  parallel_for(
      x_grid,
      [&](long i) {
        double x = static_cast<double>(i) / x_grid;
        ScaledMatrix prod = ScaledMatrix::identity(2);
        MatrixXc step(2, 2);
        step(0, 1) = -1.0;
        step(1, 0) = 1.0;
        step(1, 1) = 0.0;
        for (long m = 0; m < ell; ++m) {
          step(0, 0) = E - 2.0 * lambda * std::cos(kTwoPi * skew_phase(x, y0, pq, m));
          prod.left_multiply(step);
          prod.renormalize();
        }
        slots[i] = prod.log_norm() / static_cast<double>(ell);
      },
      threads);
  return pairwise_sum(slots) / static_cast<double>(x_grid);
}

std::vector<double> skewshift_truncation_spectrum(double lambda, long p, long q, double y0,
                                                  double x0, int nn) {
  const double pq = static_cast<double>(p) / q;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nn, nn);
  for (int m = 0; m < nn; ++m) {
    H(m, m) = 2.0 * lambda * std::cos(kTwoPi * skew_phase(x0, y0, pq, m));
    if (m + 1 < nn) {
      H(m, m + 1) = 1.0;
      H(m + 1, m) = 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + nn};
}

double duality_unitary_residual(double lambda, long p, long q, const Frequency& y, int trunc,
                                int probe_count, unsigned long seed) {
  if (trunc < 4 * q) throw std::invalid_argument("duality_unitary_residual: trunc >= 4q");
  const double y0 = y.omega[0];
  const double pq = static_cast<double>(p) / q;
  const int W = trunc;            // x-grid size = window length, so x-modes are exact
  const long n_half = q + 1;      // probe support |n| <= n_half
  if (n_half > trunc - 2 * static_cast<long>(q))
    throw std::invalid_argument("duality_unitary_residual: probe support too close to edge");
  const long n_lo = -n_half - 1, n_hi = n_half + 1;  // H extends support by one site
  const long n_span = n_hi - n_lo + 1;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(-1.0, 1.0);
  const std::vector<double> thetas = {0.0123, 0.3411, 0.7808};
  double worst = 0.0;

  for (int pr = 0; pr < probe_count; ++pr) {
    // u(x_i, n) on the grid, support |n| <= n_half (u == 0 identically elsewhere).
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(W, n_span);
    for (int i = 0; i < W; ++i)
      for (long n = -n_half; n <= n_half; ++n)
        u(i, n - n_lo) = Complex(coin(rng), coin(rng));
    // (H^sk u)(x, n) = u(x, n+1) + u(x, n-1) + 2 lambda cos(...) u(x, n).
    Eigen::MatrixXcd Hu = Eigen::MatrixXcd::Zero(W, n_span);
    for (int i = 0; i < W; ++i) {
      double x = static_cast<double>(i) / W;
      for (long n = n_lo; n <= n_hi; ++n) {
        Complex v = 2.0 * lambda * std::cos(kTwoPi * skew_phase(x, y0, pq, n)) * u(i, n - n_lo);
        if (n + 1 <= n_hi) v += u(i, n + 1 - n_lo);
        if (n - 1 >= n_lo) v += u(i, n - 1 - n_lo);
        Hu(i, n - n_lo) = v;
      }
    }
    auto transform = [&](const Eigen::MatrixXcd& f, double theta, long m, long j) {
      Complex acc = 0.0;
      for (long n = n_lo; n <= n_hi; ++n) {
        if (((n % q) + q) % q != j) continue;
        Complex xmode = 0.0;
        for (int i = 0; i < W; ++i)
          xmode += unit(static_cast<double>(m) * i / W) * f(i, n - n_lo);
        acc += unit((theta + m * y0) * n) * xmode / static_cast<double>(W);
      }
      return acc;
    };
    for (double theta : thetas) {
      double num = 0.0, den = 0.0;
      for (long m = 0; m < W; ++m) {
        for (long j = 0; j < q; ++j) {
          Complex lhs = transform(Hu, theta, m, j);
          Complex rhs = lambda * unit(j * (j - 1) * pq) * transform(u, theta, m + 1, j) +
                        lambda * unit(-j * (j - 1) * pq) * transform(u, theta, m - 1, j) +
                        unit(-(theta + m * y0)) * transform(u, theta, m, (j + 1) % q) +
                        unit(theta + m * y0) * transform(u, theta, m, (j + q - 1) % q);
          num += std::norm(lhs - rhs);
          den += std::norm(transform(u, theta, m, j));
        }
      }
      worst = std::max(worst, std::sqrt(num) / std::max(std::sqrt(den), 1e-300));
    }
  }
  return worst;
}

}  // namespace qjl
