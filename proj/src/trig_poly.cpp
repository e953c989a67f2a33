#include "qjl/trig_poly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qjl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void TrigMatrixPolynomial::add(const std::vector<int>& k, const MatrixXc& C) {
  if (static_cast<int>(k.size()) != b) throw std::invalid_argument("TrigMatrixPolynomial::add: bad k size");
  if (C.rows() != d || C.cols() != d) throw std::invalid_argument("TrigMatrixPolynomial::add: bad matrix size");
  auto it = coeffs.find(k);
  if (it == coeffs.end())
    coeffs.emplace(k, C);
  else
    it->second += C;
}

void TrigMatrixPolynomial::add_entry(int k, int row, int col, Complex value) {
  MatrixXc C = MatrixXc::Zero(d, d);
  C(row, col) = value;
  add(k, C);
}

int TrigMatrixPolynomial::degree() const {
  int deg = 0;
  for (const auto& [k, C] : coeffs)
    for (int ki : k) deg = std::max(deg, std::abs(ki));
  return deg;
}

bool TrigMatrixPolynomial::is_constant() const {
  for (const auto& [k, C] : coeffs) {
    for (int ki : k)
      if (ki != 0 && C.norm() > 0.0) return false;
  }
  return true;
}

bool TrigMatrixPolynomial::coefficients_hermitian(double tol) const {
  for (const auto& [k, C] : coeffs) {
    std::vector<int> mk(k.size());
    for (size_t i = 0; i < k.size(); ++i) mk[i] = -k[i];
    auto it = coeffs.find(mk);
    MatrixXc other = (it == coeffs.end()) ? MatrixXc::Zero(d, d) : it->second;
    if ((C - other.adjoint()).norm() > tol * (1.0 + C.norm())) return false;
  }
  return true;
}

MatrixXc eval(const TrigMatrixPolynomial& F, const ComplexPhase& z) {
  if (z.b() != F.b) throw std::invalid_argument("eval: torus dimension mismatch");
  MatrixXc out = MatrixXc::Zero(F.d, F.d);
  for (const auto& [k, C] : F.coeffs) {
    double kdot_theta = 0.0, kdot_eps = 0.0;
    for (int i = 0; i < F.b; ++i) {
      kdot_theta += k[i] * z.theta[i];
      kdot_eps += k[i] * z.eps[i];
    }
    // e^{2 pi i k.(theta + i eps)} = e^{-2 pi k.eps} e^{2 pi i k.theta}
    Complex phase = std::exp(Complex(-kTwoPi * kdot_eps, kTwoPi * kdot_theta));
    out += phase * C;
  }
  return out;
}

TrigMatrixPolynomial star_extension(const TrigMatrixPolynomial& F) {
  TrigMatrixPolynomial G(F.d, F.b);
  G.hermitian = F.hermitian;
  for (const auto& [k, C] : F.coeffs) {
    std::vector<int> mk(k.size());
    for (size_t i = 0; i < k.size(); ++i) mk[i] = -k[i];
    G.coeffs[mk] = C.adjoint();
  }
  return G;
}

TrigMatrixPolynomial scalar_constant(Complex c) {
  TrigMatrixPolynomial F(1, 1);
  F.add_entry(0, 0, 0, c);
  return F;
}

TrigMatrixPolynomial scalar_cosine(double amplitude) {
  TrigMatrixPolynomial F(1, 1);
  F.hermitian = true;
  F.add_entry(1, 0, 0, amplitude);
  F.add_entry(-1, 0, 0, amplitude);
  return F;
}

TrigMatrixPolynomial scalar_cosine_shifted(double amplitude, double s) {
  TrigMatrixPolynomial F(1, 1);
  F.hermitian = true;
  F.add_entry(1, 0, 0, amplitude * std::exp(Complex(0.0, kTwoPi * s)));
  F.add_entry(-1, 0, 0, amplitude * std::exp(Complex(0.0, -kTwoPi * s)));
  return F;
}

TrigMatrixPolynomial phase_shift(const TrigMatrixPolynomial& F, double s) {
  if (F.b != 1) throw std::invalid_argument("phase_shift: b = 1 only");
  TrigMatrixPolynomial G(F.d, F.b);
  G.hermitian = F.hermitian;
  for (const auto& [k, C] : F.coeffs)
    G.coeffs[k] = std::exp(Complex(0.0, kTwoPi * k[0] * s)) * C;
  return G;
}

}  // namespace qjl
