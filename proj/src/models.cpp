#include "qjl/models.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qjl/finite_volume.hpp"

namespace qjl {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

// c(theta) = l1 + l3 e^{2 pi i theta}, shifted by s: c(theta + s).
void add_c(TrigMatrixPolynomial& F, int row, int col, double l1, double l3, double s,
           Complex scale = 1.0) {
  F.add_entry(0, row, col, scale * l1);
  F.add_entry(1, row, col, scale * l3 * std::exp(kI * (kTwoPi * s)));
}
// d(theta) = l1 + l3 e^{-2 pi i theta}, shifted by s.
void add_dbar(TrigMatrixPolynomial& F, int row, int col, double l1, double l3, double s,
              Complex scale = 1.0) {
  F.add_entry(0, row, col, scale * l1);
  F.add_entry(-1, row, col, scale * l3 * std::exp(-kI * (kTwoPi * s)));
}
// c(theta+s) d(theta+s) = l1^2 + l3^2 + l1 l3 (e^{2 pi i (theta+s)} + e^{-2 pi i (theta+s)})
void add_cd(TrigMatrixPolynomial& F, int row, int col, double l1, double l3, double s) {
  F.add_entry(0, row, col, l1 * l1 + l3 * l3);
  F.add_entry(1, row, col, l1 * l3 * std::exp(kI * (kTwoPi * s)));
  F.add_entry(-1, row, col, l1 * l3 * std::exp(-kI * (kTwoPi * s)));
}
// a * 2cos(2 pi theta + phi) contribution
void add_2cos(TrigMatrixPolynomial& F, int row, int col, double a, double phi) {
  F.add_entry(1, row, col, a * std::exp(kI * phi));
  F.add_entry(-1, row, col, a * std::exp(-kI * phi));
}

void finalize(BlockModel& m) {
  m.Bstar = star_extension(m.B);
  m.V.hermitian = true;
}
}  // namespace

bool BlockModel::strip_contains(const ComplexPhase& z) const {
  for (Eigen::Index i = 0; i < z.eps.size(); ++i)
    if (!strip_contains(z.eps[i])) return false;
  return true;
}

LongRangeModel make_longrange(std::vector<Complex> v, TrigMatrixPolynomial g, Frequency omega) {
  if (v.empty()) throw std::invalid_argument("make_longrange: need d >= 1 hoppings");
  if (std::abs(v.back()) == 0.0) throw std::invalid_argument("make_longrange: v_d must be nonzero");
  if (g.d != 1 || g.b != 1) throw std::invalid_argument("make_longrange: g must be scalar on T^1");
  LongRangeModel m;
  m.d = static_cast<int>(v.size());
  m.v = std::move(v);
  m.g = std::move(g);
  m.omega = std::move(omega);
  return m;
}

BlockModel longrange_to_block(const LongRangeModel& m) {
  const int d = m.d;
  const double w = m.omega.omega[0];
  BlockModel out;
  out.d = d;
  out.b = 1;
  out.omega = m.omega;
  out.eta = 1.0;
  out.eps_lo = -1.0;
  out.eps_hi = 1.0;
  out.label = "longrange(d=" + std::to_string(d) + ")";

  TrigMatrixPolynomial B(d, 1), V(d, 1);
  for (int r = 0; r < d; ++r) {
    for (int c = r; c < d; ++c) B.add_entry(0, r, c, std::conj(m.v[d - 1 - (c - r)]));
    // diagonal: g(theta + (d-1-r) w/d)
    for (const auto& [k, C] : m.g.coeffs) {
      Complex ph = std::exp(kI * (kTwoPi * k[0] * (d - 1 - r) * w / d));
      V.add_entry(k[0], r, r, ph * C(0, 0));
    }
    for (int c = r + 1; c < d; ++c) {
      V.add_entry(0, r, c, m.v[c - r - 1]);
      V.add_entry(0, c, r, std::conj(m.v[c - r - 1]));
    }
  }
  out.B = B;
  out.V = V;
  finalize(out);
  return out;
}

BlockModel make_amo(double lambda, Frequency omega) {
  BlockModel m;
  m.d = 1;
  m.b = 1;
  m.omega = std::move(omega);
  m.eta = std::max(0.05, 3.0 * std::fabs(std::log(std::fabs(lambda))) / (4.0 * kPi));
  m.eps_lo = -m.eta;
  m.eps_hi = m.eta;
  m.label = "amo(lambda=" + std::to_string(lambda) + ")";
  m.B = scalar_constant(1.0);
  m.V = scalar_cosine(lambda);
  finalize(m);
  return m;
}

BlockModel make_xy(double rho, const TrigMatrixPolynomial& v, Frequency omega) {
  if (std::fabs(std::fabs(rho) - 1.0) < 1e-12)
    throw std::invalid_argument("make_xy: |rho| = 1 makes B singular");
  if (v.d != 1 || v.b != 1) throw std::invalid_argument("make_xy: v must be scalar");
  BlockModel m;
  m.d = 2;
  m.b = 1;
  m.omega = std::move(omega);
  m.eta = 1.0;
  m.eps_lo = -1.0;
  m.eps_hi = 1.0;
  m.label = "xy(rho=" + std::to_string(rho) + ")";
  TrigMatrixPolynomial B(2, 1), V(2, 1);
  MatrixXc Bc(2, 2);
  Bc << 1.0, rho, -rho, -1.0;
  B.add(0, Bc);
  for (const auto& [k, C] : v.coeffs) {
    V.add_entry(k[0], 0, 0, C(0, 0));
    V.add_entry(k[0], 1, 1, -C(0, 0));
  }
  m.B = B;
  m.V = V;
  finalize(m);
  return m;
}

BlockModel make_skewshift_dual(double lambda, long p, long q, Frequency y) {
  if (q < 3) throw std::invalid_argument("make_skewshift_dual: q >= 3 required");
  if (std::gcd(std::labs(p), q) != 1) throw std::invalid_argument("make_skewshift_dual: p/q must be reduced");
  if (lambda == 0.0) throw std::invalid_argument("make_skewshift_dual: lambda != 0");
  BlockModel m;
  m.d = static_cast<int>(q);
  m.b = 1;
  m.omega = std::move(y);
  m.eta = 2.5;
  m.eps_lo = -2.5;
  m.eps_hi = 2.5;
  m.label = "skewshift_dual(q=" + std::to_string(q) + ")";
  TrigMatrixPolynomial B(m.d, 1), V(m.d, 1);
  // rows ordered j = q-1, ..., 0
  for (int r = 0; r < m.d; ++r) {
    long j = q - 1 - r;
    double ang = kTwoPi * static_cast<double>((j * (j - 1) % q) * p % q) / static_cast<double>(q);
    B.add_entry(0, r, r, lambda * std::exp(kI * ang));
  }
  for (int r = 0; r < m.d; ++r) {
    int up = (r + 1) % m.d;    // holds hat-u_{j-1}
    int down = (r - 1 + m.d) % m.d;  // holds hat-u_{j+1}
    V.add_entry(1, r, up, 1.0);      // e^{2 pi i theta} u_{j-1}
    V.add_entry(-1, r, down, 1.0);   // e^{-2 pi i theta} u_{j+1}
  }
  m.B = B;
  m.V = V;
  finalize(m);
  return m;
}

BlockModel make_dirac_harper(double lambda, Frequency omega) {
  BlockModel m;
  m.d = 4;
  m.b = 1;
  m.omega = std::move(omega);
  m.eta = 1.0;
  m.eps_lo = -1.0;
  m.eps_hi = 1.0;
  m.label = "dirac_harper(lambda=" + std::to_string(lambda) + ")";
  TrigMatrixPolynomial B(4, 1), V(4, 1);
  MatrixXc swap2 = MatrixXc::Zero(4, 4);
  swap2(0, 1) = swap2(1, 0) = swap2(2, 3) = swap2(3, 2) = 1.0;
  B.add(0, swap2);
  V.add(0, swap2);  // V_0
  // lambda * V_1(theta); symmetric real pattern
  auto both = [&](int r, int c, double a, double phi) {
    add_2cos(V, r, c, lambda * a, phi);
    add_2cos(V, c, r, lambda * a, phi);
  };
  V.add_entry(0, 0, 2, lambda);
  V.add_entry(0, 2, 0, lambda);
  both(0, 2, 1.0, 0.0);
  V.add_entry(0, 0, 3, lambda);
  V.add_entry(0, 3, 0, lambda);
  both(0, 3, -1.0, -kPi / 3.0);
  V.add_entry(0, 1, 2, lambda);
  V.add_entry(0, 2, 1, lambda);
  both(1, 2, 1.0, kPi / 3.0);
  V.add_entry(0, 1, 3, lambda);
  V.add_entry(0, 3, 1, lambda);
  both(1, 3, 1.0, 0.0);
  m.B = B;
  m.V = V;
  finalize(m);
  return m;
}

BlockModel make_aa(double l1, double l2, double l3, double rho, Frequency omega) {
  if (l2 == 0.0) throw std::invalid_argument("make_aa: lambda_2 != 0");
  if (std::fabs(std::fabs(l1) - std::fabs(l3)) < 1e-12)
    throw std::invalid_argument("make_aa: need |lambda_1| != |lambda_3|");
  BlockModel m;
  m.d = 2;
  m.b = 1;
  m.omega = omega;
  const double w = omega.omega[0];
  // c(theta + i eps) vanishes when |l3| e^{-2 pi eps} = |l1|
  double eps_star = -std::log(std::fabs(l1 / l3)) / kTwoPi;
  if (std::fabs(l1) > std::fabs(l3)) {  // eps_star < 0; strip extends upward
    m.eps_lo = 0.9 * eps_star;
    m.eps_hi = 2.0;
  } else {  // eps_star > 0; strip extends downward
    m.eps_lo = -2.0;
    m.eps_hi = 0.9 * eps_star;
  }
  m.eta = std::min(std::fabs(m.eps_lo), m.eps_hi);
  m.label = "graphene_aa";
  TrigMatrixPolynomial B(2, 1), V(2, 1);
  add_c(B, 0, 0, l1, l3, -w, l2);
  add_c(B, 1, 1, l1, l3, 0.0, l2);
  B.add_entry(0, 1, 0, 2.0 * rho * l2);
  add_cd(V, 0, 0, l1, l3, 0.0);
  V.add_entry(0, 0, 0, rho * rho + l2 * l2);
  add_cd(V, 1, 1, l1, l3, 0.0);
  V.add_entry(0, 1, 1, rho * rho + l2 * l2);
  add_c(V, 0, 1, l1, l3, 0.0, 2.0 * rho);
  add_dbar(V, 1, 0, l1, l3, 0.0, 2.0 * rho);
  m.B = B;
  m.V = V;
  finalize(m);
  return m;
}

BlockModel make_ab(double l1, double l2, double l3, double rho, Frequency omega) {
  if (l2 == 0.0) throw std::invalid_argument("make_ab: lambda_2 != 0");
  if (std::fabs(std::fabs(l1) - std::fabs(l3)) < 1e-12)
    throw std::invalid_argument("make_ab: need |lambda_1| != |lambda_3|");
  BlockModel m;
  m.d = 2;
  m.b = 1;
  m.omega = omega;
  const double w = omega.omega[0];
  // d(theta + i eps) vanishes when |l3| e^{2 pi eps} = |l1|
  double eps_star = std::log(std::fabs(l1 / l3)) / kTwoPi;
  if (std::fabs(l3) > std::fabs(l1)) {  // eps_star < 0; strip extends upward
    m.eps_lo = 0.9 * eps_star;
    m.eps_hi = 2.0;
  } else {
    m.eps_lo = -2.0;
    m.eps_hi = 0.9 * eps_star;
  }
  m.eta = std::min(std::fabs(m.eps_lo), m.eps_hi);
  m.label = "graphene_ab";
  const Complex tw = std::exp(-kI * (kTwoPi * w / 3.0));
  TrigMatrixPolynomial B(2, 1), V(2, 1);
  add_dbar(B, 0, 0, l1, l3, -w, l2);
  B.add_entry(0, 1, 0, rho * l2);
  add_dbar(B, 1, 1, l1, l3, -2.0 * w, l2 * tw);
  add_cd(V, 0, 0, l1, l3, 0.0);
  V.add_entry(0, 0, 0, l2 * l2);
  add_cd(V, 1, 1, l1, l3, -w);
  V.add_entry(0, 1, 1, rho * rho + l2 * l2);
  add_dbar(V, 0, 1, l1, l3, 0.0, rho);
  add_c(V, 1, 0, l1, l3, 0.0, rho);
  m.B = B;
  m.V = V;
  finalize(m);
  return m;
}

BlockModel make_coupled_harper(double l1, double l2, double coupling, Frequency omega) {
  BlockModel m;
  m.d = 2;
  m.b = 1;
  m.omega = std::move(omega);
  m.eta = 1.5;
  m.eps_lo = -1.5;
  m.eps_hi = 1.5;
  m.label = "coupled_harper";
  TrigMatrixPolynomial B(2, 1), V(2, 1);
  B.add(0, MatrixXc::Identity(2, 2));
  add_2cos(V, 0, 0, l1, 0.0);
  add_2cos(V, 1, 1, l2, 0.0);
  V.add_entry(0, 0, 1, coupling);
  V.add_entry(0, 1, 0, coupling);
  m.B = B;
  m.V = V;
  finalize(m);
  return m;
}

BlockModel shifted_model(const BlockModel& m, double s) {
  BlockModel out = m;
  out.B = phase_shift(m.B, s);
  out.V = phase_shift(m.V, s);
  out.Bstar = star_extension(out.B);
  out.label = m.label + "+shift";
  return out;
}

double verify_J_symmetry(const BlockModel& m, const MatrixXc& J, int grid) {
  if ((J * J.adjoint() - MatrixXc::Identity(m.d, m.d)).norm() > 1e-12)
    throw std::invalid_argument("verify_J_symmetry: J must be orthonormal");
  if (!m.B.is_constant()) throw std::invalid_argument("J-symmetry check requires constant B");
  MatrixXc Jinv = J.adjoint();
  MatrixXc Bc = eval(m.B, ComplexPhase(0.0, 0.0));
  double b_res = (J * Bc * Jinv - Bc.transpose()).norm();
  double res = 0.0;
  for (int i = 0; i < grid; ++i) {
    double th = static_cast<double>(i) / grid;
    MatrixXc Vp = eval(m.V, ComplexPhase(th, 0.0));
    MatrixXc Vm = eval(m.V, ComplexPhase(-th, 0.0));
    res = std::max(res, (J * Vp * Jinv - Vm.transpose()).norm() + b_res);
  }
  return res;
}

double verify_f_periodicity(const BlockModel& m, double E, int n, int period_denom, int grid) {
  if (n < 3) throw std::invalid_argument("verify_f_periodicity: n >= 3");
  if (period_denom < 1) throw std::invalid_argument("verify_f_periodicity: period_denom >= 1");
  double res = 0.0;
  for (int i = 0; i < grid; ++i) {
    double th = static_cast<double>(i) / grid + 0.0173;
    LogComplex f0 = log_determinant(assemble(m, ComplexPhase(th, 0.0), n, BoundaryCondition::Periodic), E);
    LogComplex f1 = log_determinant(
        assemble(m, ComplexPhase(th + 1.0 / period_denom, 0.0), n, BoundaryCondition::Periodic), E);
    res = std::max(res, log_complex_rel_diff(f1, f0));
  }
  return res;
}

void validate_model(const BlockModel& m, int grid, int eps_samples) {
  if (!m.V.coefficients_hermitian())
    throw std::runtime_error("validate_model: V is not Hermitian in coefficients (" + m.label + ")");
  for (int i = 0; i < grid; ++i) {
    double th = static_cast<double>(i) / grid;
    for (int s = 0; s < eps_samples; ++s) {
      double ep = m.eps_lo + (m.eps_hi - m.eps_lo) * s / std::max(1, eps_samples - 1);
      MatrixXc Bz = eval(m.B, ComplexPhase(th, ep));
      if (std::abs(Bz.determinant()) < 1e-12)
        throw std::runtime_error("validate_model: det B vanishes on the strip (" + m.label + ")");
    }
    MatrixXc Vr = eval(m.V, ComplexPhase(th, 0.0));
    if ((Vr - Vr.adjoint()).norm() > 1e-12 * (1.0 + Vr.norm()))
      throw std::runtime_error("validate_model: V not Hermitian at real phase (" + m.label + ")");
  }
}

MatrixXc J_identity(int d) { return MatrixXc::Identity(d, d); }

MatrixXc J_antidiagonal(int d) {
  MatrixXc J = MatrixXc::Zero(d, d);
  for (int i = 0; i < d; ++i) J(i, d - 1 - i) = 1.0;
  return J;
}

MatrixXc J_xy() {
  MatrixXc J = MatrixXc::Zero(2, 2);
  J(0, 0) = 1.0;
  J(1, 1) = -1.0;
  return J;
}

}  // namespace qjl
