// Adaptive Gauss-Kronrod quadrature with annotated algebraic endpoint
// singularities and oscillation-aware panel pre-splitting.
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgl2num {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Annotated algebraic singularity: the integrand behaves like
// |t - location|^exponent times a smooth factor near `location`.
// Only the real part of the exponent controls the substitution; an
// imaginary part adds a bounded log-oscillation that the adaptive
// refinement absorbs.
struct SingularPoint {
    double location = 0.0;
    Complex exponent{-0.5, 0.0};
};

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
    std::vector<SingularPoint> singularities;
    // Phase frequency estimates: initial panels are kept no wider than
    // half an oscillation period pi/freq.
    std::vector<double> oscillation_freqs;

    void validate() const;
};

struct QuadResult {
    Complex value{0.0, 0.0};
    double error = 0.0;      // estimated absolute error
    double l1 = 0.0;         // accumulated integral of |f| (noise scale)
    long evaluations = 0;
};

struct AccuracyError : std::runtime_error {
    Complex best_estimate;
    double error_bound;
    AccuracyError(const std::string& msg, Complex best, double err)
        : std::runtime_error(msg), best_estimate(best), error_bound(err) {}
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Integrand = std::function<Complex(double)>;

// Integral of f over [a, b].  Panels are split at every annotated singular
// point; panels touching a singular point are mapped by the power
// substitution t = c +- u^p with p chosen from the exponent's real part so
// that the transformed integrand is at least C^1 at the endpoint.
QuadResult integrate_1d(const Integrand& f, double a, double b,
                        const QuadratureSpec& spec);

// Integral of f over one full period [0, 2*pi).  Singular locations are
// interpreted mod 2*pi and their translates are annotated automatically.
QuadResult integrate_circle(const Integrand& f, const QuadratureSpec& spec);

// Integral of f over the whole line.  `envelope` bounds |f(t)| for |t| >= T
// by a decreasing function of T; the domain is truncated once the envelope
// drops below the absolute tolerance.
QuadResult integrate_line(const Integrand& f,
                          const std::function<double(double)>& envelope,
                          const QuadratureSpec& spec);

}  // namespace pgl2num
