#pragma once

// Scalar special functions used by the L-function evaluators: complex
// log-gamma (Stirling, 80-bit internals), the Riemann zeta function on
// vertical lines (Euler-Maclaurin), the upper incomplete gamma function
// for complex s and real x > 0, and the Bessel function J0.

#include <complex>

namespace epz {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

// principal-branch log Gamma; Re z > -0.5 required
lcplx lgamma_complex(lcplx z);
inline cplx lgamma_c(cplx z) {
    lcplx v = lgamma_complex(lcplx(z.real(), z.imag()));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Riemann zeta, Re z > -1, z != 1; cost grows linearly in |Im z|
cplx riemann_zeta(cplx z);

// Gamma(s, x) = int_x^inf u^{s-1} e^{-u} du, x > 0.
// Oscillation-aware quadrature; relative error ~1e-12 over the working domain.
cplx upper_gamma(cplx s, double x);

// Legendre continued fraction for real s (cross-validation path); needs x > s-ish
double upper_gamma_cf(double s, double x);

// x^{-s} Gamma(s, x) = int_1^inf u^{s-1} e^{-xu} du; the building block of the
// completed-zeta lattice expansion (no x^s prefactor, safe scale e^{-x})
cplx upper_gamma_scaled(cplx s, double x);

// J0 to ~1e-12: power series (x<8), Gauss quadrature of the cosine integral
// (8<=x<16), Hankel asymptotics beyond
double bessel_j0(double x);

} // namespace epz
