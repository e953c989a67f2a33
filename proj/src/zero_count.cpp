#include "qjl/zero_count.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qjl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit(double turns) { return {std::cos(kTwoPi * turns), std::sin(kTwoPi * turns)}; }

/// Winding number of sum_j b_j w^j over the unit circle, |b_j| pre-scaled to O(1).
long winding_on_unit_circle(const Eigen::VectorXcd& b, int samples) {
  double total = 0.0;
  double prev_arg = 0.0;
  for (int s = 0; s <= samples; ++s) {
    Complex w = unit(static_cast<double>(s % samples) / samples);
    Complex v = 0.0;
    for (Eigen::Index j = b.size() - 1; j >= 0; --j) v = v * w + b[j];
    if (std::abs(v) < 1e-290) throw std::runtime_error("count_zeros: contour passes through a zero");
    double a = std::arg(v);
    if (s > 0) {
      double da = a - prev_arg;
      if (da > std::numbers::pi) da -= kTwoPi;
      if (da <= -std::numbers::pi) da += kTwoPi;
      total += da;
    }
    prev_arg = a;
  }
  double turns = total / kTwoPi;
  long w = std::lround(turns);
  if (std::fabs(turns - w) > 0.1)
    throw std::runtime_error("count_zeros: winding number failed to close to an integer");
  return w;
}

/// Winding of the ordinary polynomial q(z) = sum a_j z^j on the circle of radius R,
/// via the rescaled coefficients a_j R^j / max.
long winding_on_circle(const Eigen::VectorXcd& a, double log_R, int samples) {
  Eigen::VectorXd t(a.size());
  for (Eigen::Index j = 0; j < a.size(); ++j)
    t[j] = (std::abs(a[j]) > 0.0 ? std::log(std::abs(a[j])) : -1e300) + j * log_R;
  double s = t.maxCoeff();
  Eigen::VectorXcd b(a.size());
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    double aj = std::abs(a[j]);
    b[j] = (aj == 0.0 || t[j] - s < -700.0) ? Complex(0, 0) : std::exp(t[j] - s) * (a[j] / aj);
  }
  return winding_on_unit_circle(b, samples);
}
}  // namespace

LogComplex LaurentPoly::eval_unit(double theta) const {
  Complex v = 0.0;
  for (int k = k_min; k <= k_max; ++k) v += coeffs[k - k_min] * unit(k * theta);
  LogComplex lc = LogComplex::from(v);
  if (!lc.is_zero()) lc.log_mag += global_log_scale;
  return lc;
}

LaurentPoly extract_laurent(const BlockModel& m, double E, int n, int oversample) {
  if (n > 60) throw std::invalid_argument(
      "extract_laurent: n > 60 unsupported; companion-matrix root finding degrades past a few "
      "hundred degrees — split the energy panel or lower n");
  if (oversample < 1) throw std::invalid_argument("extract_laurent: oversample >= 1");
  if (m.b != 1) throw std::invalid_argument("extract_laurent: single-frequency models only");
  const int D = n * m.d * std::max({m.B.degree(), m.V.degree(), 1});
  const int M = oversample * (2 * D + 1);
  std::vector<LogComplex> samples(M);
  double top = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < M; ++j) {
    samples[j] = log_determinant(
        assemble(m, ComplexPhase(static_cast<double>(j) / M, 0.0), n, BoundaryCondition::Periodic), E);
    if (!samples[j].is_zero()) top = std::max(top, samples[j].log_mag);
  }
  if (!std::isfinite(top)) throw std::runtime_error("extract_laurent: f vanishes identically on the sample grid");
  Eigen::VectorXcd vals(M);
  for (int j = 0; j < M; ++j)
    vals[j] = samples[j].is_zero() ? Complex(0, 0)
                                   : std::exp(samples[j].log_mag - top) *
                                         Complex(std::cos(samples[j].phase_angle), std::sin(samples[j].phase_angle));
  Eigen::VectorXcd c(2 * D + 1);
  for (int k = -D; k <= D; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < M; ++j) acc += vals[j] * unit(-static_cast<double>(k) * j / M);
    c[k + D] = acc / static_cast<double>(M);
  }
  double cmax = c.cwiseAbs().maxCoeff();
  int lo = 0, hi = 2 * D;
  while (lo < hi && std::abs(c[lo]) < 1e-13 * cmax) ++lo;
  while (hi > lo && std::abs(c[hi]) < 1e-13 * cmax) --hi;
  LaurentPoly poly;
  poly.k_min = lo - D;
  poly.k_max = hi - D;
  poly.coeffs = c.segment(lo, hi - lo + 1);
  poly.global_log_scale = top;
  for (int t = 0; t < 16; ++t) {
    double theta = (t + 0.3571) / 16.0;
    LogComplex truth = log_determinant(
        assemble(m, ComplexPhase(theta, 0.0), n, BoundaryCondition::Periodic), E);
    LogComplex reval = poly.eval_unit(theta);
    Complex a = reval.is_zero() ? Complex(0, 0)
                                : std::exp(reval.log_mag - top) *
                                      Complex(std::cos(reval.phase_angle), std::sin(reval.phase_angle));
    Complex b = truth.is_zero() ? Complex(0, 0)
                                : std::exp(truth.log_mag - top) *
                                      Complex(std::cos(truth.phase_angle), std::sin(truth.phase_angle));
    if (std::abs(a - b) > 1e-8 * std::max({std::abs(b), 1e-10 * cmax}))
      throw std::runtime_error("extract_laurent: insufficient oversampling or dynamic range");
  }
  return poly;
}

AnnulusZeroReport count_zeros(const LaurentPoly& poly, double eps_annulus) {
  if (poly.coeffs.size() == 0 || poly.coeffs.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("count_zeros: zero polynomial");
  AnnulusZeroReport rep;
  rep.eps_annulus = eps_annulus;
  const int N = poly.degree_span();
  if (N == 0) return rep;  // constant: no zeros
  if (N > 1000) throw std::invalid_argument("count_zeros: degree cap 1000 exceeded");
  Eigen::VectorXcd a = poly.coeffs / poly.coeffs[N];  // monic ordinary polynomial z^{-k_min} f
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(N, N);
  for (int j = 0; j < N; ++j) comp(j, N - 1) = -a[j];
  comp.block(1, 0, N - 1, N - 1).diagonal().setConstant(1.0);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  rep.roots.resize(N);
  for (int j = 0; j < N; ++j) {
    Complex w = es.eigenvalues()[j];
    Complex p = 0.0, dp = 0.0;  // one Newton polish
    for (int k = N; k >= 0; --k) {
      Complex ak = k == N ? Complex(1.0, 0.0) : a[k];
      dp = dp * w + p;
      p = p * w + ak;
    }
    if (std::abs(dp) > 1e-14) w -= p / dp;
    rep.roots[j] = w;
  }
  const double slack = 1e-8;
  for (int j = 0; j < N; ++j) {
    double level = std::fabs(std::log(std::abs(rep.roots[j]))) / kTwoPi;
    if (level <= eps_annulus + slack) {
      ++rep.count;
      if (std::fabs(level - eps_annulus) <= slack) rep.boundary_flags.push_back(j);
    }
  }
  const int samples = std::max(256, 8 * N);
  const double log_R = kTwoPi * (eps_annulus + 2e-8);
  long wind_gap = winding_on_circle(a, log_R, samples) - winding_on_circle(a, -log_R, samples);
  if (wind_gap != rep.count) {
    std::ostringstream msg;
    msg << "count_zeros: companion count " << rep.count << " vs argument-principle count "
        << wind_gap;
    throw std::runtime_error(msg.str());
  }
  return rep;
}

double pairing_check(AnnulusZeroReport& report, PairingKind kind, double alpha) {
  report.pairing.clear();
  double worst = 0.0;
  for (int i = 0; i < static_cast<int>(report.roots.size()); ++i) {
    Complex w = report.roots[i];
    Complex t;
    switch (kind) {
      case PairingKind::UnitReflection: t = 1.0 / std::conj(w); break;
      case PairingKind::ConjugateRotation: t = std::conj(w) * unit(alpha); break;
      case PairingKind::Rotation: t = w * unit(alpha); break;
    }
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < static_cast<int>(report.roots.size()); ++j) {
      double d = std::abs(t - report.roots[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    report.pairing.emplace_back(i, best);
    worst = std::max(worst, best_d / (1.0 + std::abs(t)));
  }
  return worst;
}

RieszRatio riesz_ratio(const BlockModel& m, double E, int n, double eta_third,
                       const AccelerationEstimate& kappa_reference) {
  LaurentPoly poly = extract_laurent(m, E, n);
  AnnulusZeroReport rep = count_zeros(poly, eta_third);
  RieszRatio out;
  out.count = rep.count;
  out.ratio = static_cast<double>(rep.count) / (2.0 * n);
  out.gap = std::fabs(out.ratio - static_cast<double>(kappa_reference.kappa_rounded));
  return out;
}

}  // namespace qjl
