#pragma once

#include <utility>
#include <vector>

#include "qjl/finite_volume.hpp"
#include "qjl/lyapunov.hpp"

namespace qjl {

/// Laurent polynomial e^{global_log_scale} * sum_{k_min..k_max} c_k z^k with trimmed ends.
struct LaurentPoly {
  int k_min = 0;
  int k_max = 0;
  Eigen::VectorXcd coeffs;  // index k - k_min
  double global_log_scale = 0.0;

  int degree_span() const { return k_max - k_min; }
  /// Value at z = e^{2 pi i theta} in log form (the only regime we evaluate in).
  LogComplex eval_unit(double theta) const;
};

/// Recover det(P_n(theta) - E) as a Laurent polynomial in z = e^{2 pi i theta} by
/// oversampled Fourier inversion of log-rescaled samples.
LaurentPoly extract_laurent(const BlockModel& m, double E, int n, int oversample = 2);

struct AnnulusZeroReport {
  int n = 0;
  double E = 0.0;
  double eps_annulus = 0.0;
  std::vector<Complex> roots;  // all roots of the associated ordinary polynomial
  long count = 0;              // roots with |log|z|| / 2pi <= eps_annulus (+1e-8 boundary slack)
  std::vector<int> boundary_flags;             // indices of roots within 1e-8 of the boundary
  std::vector<std::pair<int, int>> pairing;    // filled by pairing_check
};

/// Companion-matrix roots with one Newton polish, annulus count cross-validated by an
/// argument-principle winding on both circles (must agree exactly).
AnnulusZeroReport count_zeros(const LaurentPoly& poly, double eps_annulus);

enum class PairingKind { UnitReflection, ConjugateRotation, Rotation };

/// Max (relative) distance from each transformed root to the nearest root. alpha is the
/// rotation angle in turns: conj(w) e^{2 pi i alpha} or w e^{2 pi i alpha}.
double pairing_check(AnnulusZeroReport& report, PairingKind kind, double alpha = 0.0);

struct RieszRatio {
  double ratio = 0.0;
  double gap = 0.0;
  long count = 0;
};

RieszRatio riesz_ratio(const BlockModel& m, double E, int n, double eta_third,
                       const AccelerationEstimate& kappa_reference);

}  // namespace qjl
