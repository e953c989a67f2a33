#include "qjl/torus.hpp"

#include <cmath>
#include <stdexcept>

namespace qjl {

namespace {
double frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;
  return f;
}
}  // namespace

double torus_dist(double x) {
  double f = frac(x);
  return std::min(f, 1.0 - f);
}

double torus_dist(const Eigen::VectorXd& x) {
  double d = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) d = std::max(d, torus_dist(x[i]));
  return d;
}

Frequency::Frequency(double w, double a, double A, long K)
    : omega(Eigen::VectorXd::Constant(1, frac(w))), dioph_a(a), dioph_A(A), check_horizon(K) {}

Frequency::Frequency(Eigen::VectorXd w, double a, double A, long K)
    : omega(std::move(w)), dioph_a(a), dioph_A(A), check_horizon(K) {
  for (Eigen::Index i = 0; i < omega.size(); ++i) omega[i] = frac(omega[i]);
}

ComplexPhase::ComplexPhase(double th, double ep)
    : theta(Eigen::VectorXd::Constant(1, th)), eps(Eigen::VectorXd::Constant(1, ep)) {}

ComplexPhase::ComplexPhase(Eigen::VectorXd th, Eigen::VectorXd ep)
    : theta(std::move(th)), eps(std::move(ep)) {
  if (theta.size() != eps.size()) throw std::invalid_argument("ComplexPhase: theta/eps size mismatch");
}

ComplexPhase ComplexPhase::shifted(const Eigen::VectorXd& omega, double t) const {
  if (omega.size() != theta.size()) throw std::invalid_argument("ComplexPhase::shifted: dim mismatch");
  ComplexPhase z = *this;
  for (Eigen::Index i = 0; i < theta.size(); ++i) z.theta[i] = frac(theta[i] + t * omega[i]);
  return z;
}

bool is_diophantine_finite(const Frequency& om) {
  if (om.dioph_a <= 0.0) throw std::invalid_argument("is_diophantine_finite: a must be positive");
  if (om.dioph_A <= static_cast<double>(om.b()))
    throw std::invalid_argument("is_diophantine_finite: need A > b");
  if (om.check_horizon < 1) throw std::invalid_argument("is_diophantine_finite: K >= 1 required");

  const int b = om.b();
  const long K = om.check_horizon;
  std::vector<long> k(b, -K);
  while (true) {
    long sup = 0;
    double dot = 0.0;
    for (int i = 0; i < b; ++i) {
      sup = std::max(sup, std::labs(k[i]));
      dot += static_cast<double>(k[i]) * om.omega[i];
    }
    if (sup > 0) {
      double rhs = om.dioph_a / std::pow(static_cast<double>(sup), om.dioph_A);
      if (torus_dist(dot) < rhs) return false;
    }
    int i = 0;
    for (; i < b; ++i) {
      if (k[i] < K) {
        ++k[i];
        break;
      }
      k[i] = -K;
    }
    if (i == b) break;
  }
  return true;
}

bool is_nonresonant_phase(double theta, const Frequency& om, double a_prime, double t,
                          int denom, long horizon, bool include_zero) {
  if (t <= 1.0) throw std::invalid_argument("is_nonresonant_phase: need t > 1");
  if (denom < 1) throw std::invalid_argument("is_nonresonant_phase: denom >= 1");
  if (horizon < 1) throw std::invalid_argument("is_nonresonant_phase: horizon >= 1");
  if (om.b() != 1) throw std::invalid_argument("is_nonresonant_phase: b = 1 only");

  const double w = om.omega[0];
  for (long m = -horizon * denom; m <= horizon * denom; ++m) {
    if (m == 0 && !include_zero) continue;
    double n = static_cast<double>(m) / denom;
    double lhs = torus_dist(2.0 * theta - n * w);
    double rhs = a_prime / std::pow(1.0 + std::fabs(n), t);
    if (lhs < rhs) return false;
  }
  return true;
}

AdmissibleScales admissible_scales(const Frequency& om, double kappa0, long n_min, long n_max) {
  if (!(kappa0 > 0.0 && kappa0 <= 0.5)) throw std::invalid_argument("admissible_scales: 0 < kappa0 <= 1/2");
  if (n_min < 1) throw std::invalid_argument("admissible_scales: n_min >= 1");
  AdmissibleScales out;
  for (long n = n_min; n <= n_max; ++n) {
    double d = 0.0;
    for (Eigen::Index i = 0; i < om.omega.size(); ++i)
      d = std::max(d, torus_dist(static_cast<double>(n) * om.omega[i]));
    if (d <= kappa0) out.scales.push_back(n);
  }
  for (size_t i = 1; i < out.scales.size(); ++i)
    out.max_gap = std::max(out.max_gap, out.scales[i] - out.scales[i - 1]);
  return out;
}

std::vector<long> epsilon_resonances(double theta, const Frequency& y, int q, double eps_exp,
                                     long horizon) {
  if (q < 1) throw std::invalid_argument("epsilon_resonances: q >= 1");
  if (!(eps_exp > 0.0 && eps_exp < 1.0)) throw std::invalid_argument("epsilon_resonances: eps_exp in (0,1)");
  if (horizon < 1) throw std::invalid_argument("epsilon_resonances: horizon >= 1");
  if (y.b() != 1) throw std::invalid_argument("epsilon_resonances: b = 1 only");

  const double w = y.omega[0];
  auto dist = [&](long k) { return torus_dist(q * (2.0 * theta - static_cast<double>(k) * w)); };

  std::vector<long> out;
  // Walk |k| outward so the minimality condition can be maintained with a running min.
  double running_min = dist(0);
  if (running_min <= 1.0) out.push_back(0);  // e^{-|0|^eps} = 1 always admits k = 0
  double min_so_far = running_min;
  for (long a = 1; a <= horizon; ++a) {
    for (long k : {a, -a}) {
      double dk = dist(k);
      bool small = dk <= std::exp(-std::pow(static_cast<double>(a), eps_exp));
      bool minimal = dk <= min_so_far;
      if (small && minimal) out.push_back(k);
    }
    min_so_far = std::min({min_so_far, dist(a), dist(-a)});
  }
  return out;
}

}  // namespace qjl
