#pragma once

#include <vector>

#include "qjl/models.hpp"

namespace qjl {

/// Averaged-in-x finite-scale Lyapunov exponent of the skew-shift cosine cocycle
/// with potential 2 lambda cos(2 pi (x + m y + m(m-1) p/q)).
double skewshift_avg_lyapunov(double lambda, long p, long q, const Frequency& y, double E,
                              long ell, int x_grid, int threads = 0);

/// Max relative residual of the discretized intertwining U H = H-hat U over random
/// finitely supported probes; x is discretized so the transform is an exact finite sum.
double duality_unitary_residual(double lambda, long p, long q, const Frequency& y, int trunc,
                                int probe_count, unsigned long seed = 1234);

/// Sorted eigenvalues of a size-nn tridiagonal skew-shift truncation (Dirichlet), used to
/// sample energies from the spectrum.
std::vector<double> skewshift_truncation_spectrum(double lambda, long p, long q, double y0,
                                                  double x0, int nn);

}  // namespace qjl
