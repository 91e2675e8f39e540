#pragma once

// Normalized modified Bessel function of complex order,
//   ktilde(nu, y) = e^{pi Im(nu)/2} K_nu(y),   nu = mu + i t,  y > 0,
// for 0 < mu <= 3.5 and t >= 0. The normalization keeps values in double
// range throughout the oscillatory region y < t.
//
// Regimes: ascending series (small y), one/two-saddle Debye expansions
// (|nu^2+y^2|^{3/2}/|nu|^2 large), and adaptive Gauss quadrature on a
// saddle-point contour of int e^{-y cosh w + nu w} dw elsewhere.

#include <complex>

namespace epz {

std::complex<double> ktilde(std::complex<double> nu, double y);

// individual regimes, exposed for cross-validation tests
std::complex<double> ktilde_series(std::complex<double> nu, double y);
std::complex<double> ktilde_debye(std::complex<double> nu, double y);
std::complex<double> ktilde_contour(std::complex<double> nu, double y);

// fast variant for branch tracking: ~1e-6 relative accuracy
std::complex<double> ktilde_fast(std::complex<double> nu, double y);

} // namespace epz
