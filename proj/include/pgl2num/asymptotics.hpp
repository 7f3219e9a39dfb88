// Two-term stationary phase on the circle, the main-term constants of the
// averaged-kernel expansion, remainder measurement, and the scaled model
// integral I(lambda, N, T).
#pragma once

#include <string>
#include <vector>

#include "pgl2num/quadrature.hpp"

namespace pgl2num {

// One nondegenerate critical point of the phase.
struct CriticalPoint {
    double t0 = 0.0;
};

// Oscillatory problem int_{S^1} f(t) e^{lambda phi(t)} dt with purely
// imaginary large parameter lambda.  phi is real-valued; the amplitude may
// be complex.  Derivatives are supplied as procedures.
struct PhaseProblem {
    std::function<double(double)> phi, dphi, d2phi, d3phi, d4phi;
    std::function<Complex(double)> f, df, d2f;
    std::vector<CriticalPoint> critical_points;
    Complex lambda;  // purely imaginary, |lambda| >= 1

    void validate() const;
};

// Contribution of a single critical point:
//   |lambda|^{-1/2} (C0 + C1 |lambda|^{-1}) e^{lambda phi(t0)}
// with C0 = sqrt(2 pi) e^{i sigma pi/4} |phi''|^{-1/2} f and
// C1 = sqrt(pi/2) e^{3 i sigma pi/4} |phi''|^{-3/2}
//      [f'' - phi''' f'/phi'' - phi'''' f/(4 phi'')
//       + 5 (phi''')^2 f/(12 phi''^2)],
// sigma = sign(phi'') * sign(Im lambda).
Complex stationary_phase_point(const PhaseProblem& p, const CriticalPoint& cp);

// Sum of the two-term contributions over all listed critical points.
Complex stationary_phase_2term(const PhaseProblem& p);

// Main-term constants of the averaged-kernel expansion
//   K_{lambda,tau}(c) ~ m(c) + m(c + pi/2),
//   m(c) = |lambda|^{-1/2} (A + B |lambda|^{-1} + C |lambda|^{-1} cos^2 c)
//          |sin c|^{lambda},
// obtained by feeding the kernel's phase/amplitude derivative data at the
// critical points t = 0, pi/2 into the two-term engine with large
// parameter lambda/2 and the 1/(2 pi) normalization.  Closed forms:
//   A = sqrt(2/pi) e^{-i sigma pi/4},
//   B = e^{-3 i sigma pi/4} / (2 sqrt(2 pi)),
//   C = (4 tau^2 - 1) e^{-3 i sigma pi/4} / sqrt(2 pi),
// sigma = sign(Im lambda).
struct MainTermConstants {
    Complex A, B, C;
};
MainTermConstants main_term_constants(Complex tau, int lambda_sign = +1);

// m_lambda(c) built from the constants.
Complex m_lambda_main(Complex tau, Complex lambda, double c);

// |sin 2c|^{-1/2 - lambda/2} (m(c) + m(c + pi/2)): the main part of
// k_lambda for |lambda| >= 1, c away from the exceptional set.
Complex k_lambda_asymptotic(Complex tau, Complex lambda, double c);

// One measured point of a decay scan.
struct FitPoint {
    double param = 0.0;   // |lambda| or |s| or |xi|
    double value = 0.0;   // measured magnitude
    bool ok = true;
    std::string note;
};

// Ordinary least squares of log(value) against log(param).
double ols_loglog_slope(const std::vector<FitPoint>& pts, bool top_half_only);

struct BoundFitReport {
    std::string check_id;
    std::vector<FitPoint> points;
    double fitted_slope = 0.0;
    double fitted_constant = 0.0;   // exp(intercept)
    double target_exponent = 0.0;
    double slack = 0.2;
    bool pass = false;
    double runtime_seconds = 0.0;

    void finalize(double target, double slack_in, bool top_half_only = true);
};

// Measures r = K_{lambda,tau}(c) - [m(c) + m(c+pi/2)] on the grid and fits
// the decay exponent in |lambda| for each c.  Pass verdict requires fitted
// slope <= -2.3 for every c.of the grid (target -5/2, slack 0.2).
std::vector<BoundFitReport> claim_remainder_scan(
    Complex tau, const std::vector<double>& c_grid,
    const std::vector<double>& lambda_grid, const QuadratureSpec& spec);

// I(lambda, N, T) = T int e^{-i N c} |sin 2c|^{-1/2} |sin c|^{lambda/2}
//                     |cos c|^{-lambda/2} chi(T c) dc,
// chi supported in [-1, 1].
Complex model_integral_I(Complex lambda, double N, double T,
                         const Integrand& chi, const QuadratureSpec& spec = {});

}  // namespace pgl2num
