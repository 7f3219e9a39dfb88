// Special functions: the K-Bessel function of imaginary order and the
// gamma-function combinations used by the transform identities.
#pragma once

#include "pgl2num/quadrature.hpp"

namespace pgl2num {

// K_{it}(x) = int_0^inf e^{-x cosh u} cos(t u) du, x > 0, t real.
//
// For t <= 5 or x >= 1.6 t the defining integral is evaluated directly.
// Otherwise the contour is shifted to height pi/2, which gives
//   K_{it}(x) = e^{-pi t / 2} Re int_0^inf e^{i(t u - x sinh u)} du,
// an integral free of exponentially small cancellation; its tail is taken
// down a descent ray in the lower half plane.  Relative accuracy is
// ~1e-11 across x in [1e-3, 50], |t| <= 100.
double bessel_k_imag(double t, double x);

// Gamma(z) by the Lanczos approximation (g = 7, 9 terms) with the
// reflection formula for Re z < 1/2.  Relative accuracy ~1e-13 for
// |z| <= 50 away from poles.
Complex gamma_complex(Complex z);

// log Gamma(z) for Re z > 0 (principal branch), Lanczos-based.
Complex log_gamma_complex(Complex z);

// gamma(s) = pi^{-s/2} Gamma(s/2) / (pi^{-(1-s)/2} Gamma((1-s)/2)),
// the functional-equation factor; |gamma(s)| = 1 on the symmetric line
// Re s = 1/2.
Complex gamma_factor(Complex s);

// Gamma(s, tau) = 2 pi^s Gamma(s) / (Gamma(s/2)^2 Gamma(s/2 + tau/2)
//                                     Gamma(s/2 - tau/2)).
Complex gamma_s_tau(Complex s, Complex tau);

}  // namespace pgl2num
