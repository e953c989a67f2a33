#pragma once

#include "qjl/cocycle.hpp"

namespace qjl {

/// Finite-scale Lyapunov data at one strip offset: L holds the 2d exponents
/// (descending), Lsum the partial sums L^j = sum_{l<=j} L_l.
struct LyapunovProfile {
  long n = 0;
  double eps = 0.0;
  int grid = 0;
  Eigen::VectorXd L;
  Eigen::VectorXd Lsum;
};

struct AccelerationEstimate {
  int j = 0;
  double eps0 = 0.0;
  double h = 0.0;
  double kappa_raw = 0.0;
  long kappa_rounded = 0;
  double quantization_gap = 0.0;
  bool noisy = false;  // set when quantization_gap > 0.25
};

struct LdtReport {
  double fraction = 0.0;  // fraction of theta samples in the deviation set
  long clusters = 0;      // maximal runs of consecutive bad grid points (circular)
  double threshold = 0.0; // L^d_{(n)} - n^{-delta}
};

struct AvalancheReport {
  bool applicable = false;
  double lhs = 0.0;
  double bound = 0.0;
};

/// log ||wedge^j M_{n,E}(z)|| for j = 1..2d, computed by renormalized products of
/// exterior powers (the top singular value of each product is exact in log form).
Eigen::VectorXd log_wedge_norms(const BlockModel& m, double E, const ComplexPhase& z, long n);

/// Theta sample for grid index i: equispaced for b = 1, Fibonacci-style rank-1
/// lattice for b >= 2.
ComplexPhase grid_phase(const BlockModel& m, double eps, int i, int grid);

LyapunovProfile finite_scale_exponents(const BlockModel& m, double E, double eps, long n,
                                       int grid, int threads = 0);

AccelerationEstimate acceleration(const BlockModel& m, double E, int j, double eps0, double h,
                                  long n, int grid, int threads = 0);

std::vector<std::pair<double, double>> complexified_profile(const BlockModel& m, double E, int j,
                                                            const std::vector<double>& eps_list,
                                                            long n, int grid, int threads = 0);

LdtReport ldt_deviation_fraction(const BlockModel& m, double E, double eps, long n, int grid,
                                 double delta, int threads = 0);

AvalancheReport avalanche_check(const std::vector<MatrixXc>& g, double eps_ap, double kappa_ap,
                                double C0 = 10.0);

}  // namespace qjl
