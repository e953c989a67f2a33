#pragma once

#include <utility>
#include <vector>

#include "qjl/finite_volume.hpp"

namespace qjl {

struct SpectrumApprox {
  int n = 0;
  int theta_grid = 0;
  double merge_tol = 1e-3;
  std::vector<double> eigenvalues;                  // sorted union over the grid
  std::vector<std::pair<double, double>> intervals; // merged cover

  double total_length() const;
};

/// Eigenvalues of the finite-volume operator at real phase, ascending.
std::vector<double> finite_spectrum(const BlockModel& m, double theta, int n,
                                    BoundaryCondition bc);

/// Union of finite-volume periodic spectra over a phase grid, merged into intervals.
/// Each volume uses the commensurate frequency round(n w)/n, so the ring carries no
/// boundary seam, and sweeps a Floquet twist on the corner blocks along the grid so
/// that extended eigenvalue branches cover their bands; the phase itself sweeps one
/// fundamental period of the commensurate spectrum.
SpectrumApprox spectrum_union(const BlockModel& m, int n, int theta_grid,
                              double merge_tol = 1e-3);

/// Hausdorff distance between two unions of closed intervals, exact from endpoints.
double interval_hausdorff(const std::vector<std::pair<double, double>>& a,
                          const std::vector<std::pair<double, double>>& b);

/// Hausdorff distance between the Harper spectrum at coupling lambda and lambda times
/// the spectrum at 1/lambda.
double aubry_duality_gap(double lambda, const Frequency& omega, int n, int grid);

/// Relative residual of (H)^2 = diag(HH^*, H^*H) for the stacked-bilayer models,
/// assembled periodically on n sites with both sides built independently.
double aa_square_residual(double l1, double l2, double l3, double rho, const Frequency& omega,
                          double theta, int n);
double ab_square_residual(double l1, double l2, double l3, double rho, const Frequency& omega,
                          double theta, int n);

struct SlopeIntercept {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (eps, L^2_{(n),eps}) at four offsets just below eps_hi.
SlopeIntercept graphene_large_eps_slope(const BlockModel& m, double E, double eps_hi, long n,
                                        int grid);

}  // namespace qjl
