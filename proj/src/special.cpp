#include "pgl2num/special.hpp"

#include <cmath>

namespace pgl2num {

namespace {

double bessel_k_direct(double t, double x) {
    // Truncate where x cosh u underflows everything.
    if (x >= 746.0) return 0.0;
    double U = std::acosh(746.0 / x);
    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 8000;
    if (t != 0.0) spec.oscillation_freqs.push_back(std::abs(t));
    auto f = [t, x](double u) {
        return Complex(std::exp(-x * std::cosh(u)) * std::cos(t * u), 0.0);
    };
    return integrate_1d(f, 0.0, U, spec).value.real();
}

double bessel_k_contour(double t, double x) {
    // e^{-pi t/2} Re int_0^inf e^{i(t u - x sinh u)} du for t > 0.
    // Axis part up to Ub with x cosh(Ub) = max(t + 52, 1.8 t), then the
    // descent ray u = Ub - i w down to the turning point of
    // Im(phase) = -t w + x cosh(Ub) sin w.
    const double xU = std::max(t + 52.0, 1.8 * t);
    const double Ub = std::acosh(xU / x);
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 20000;
    spec.oscillation_freqs.push_back(t + x * std::cosh(Ub));
    auto axis = [t, x](double u) {
        double ph = t * u - x * std::sinh(u);
        return Complex(std::cos(ph), std::sin(ph));
    };
    Complex val = integrate_1d(axis, 0.0, Ub, spec).value;

    const double xcU = x * std::cosh(Ub);
    const double xsU = x * std::sinh(Ub);
    const double wstar = std::acos(std::min(1.0, t / xcU));
    auto ray = [=](double w) {
        // phase(Ub - i w) = t Ub + x sinh(Ub) sin... expanded in real terms:
        // sinh(Ub - iw) = sinh Ub cos w - i cosh Ub sin w
        double re_ph = t * Ub - xsU * std::cos(w);
        double im_ph = -t * w + xcU * std::sin(w);
        double mag = std::exp(-im_ph);
        // -i * e^{i phase}
        return Complex(mag * std::sin(re_ph), -mag * std::cos(re_ph));
    };
    QuadratureSpec sray;
    sray.rel_tol = 1e-12;
    sray.abs_tol = 1e-300;
    sray.max_subdivisions = 4000;
    sray.oscillation_freqs.push_back(t + xsU);
    val += integrate_1d(ray, 0.0, wstar, sray).value;
    return std::exp(-M_PI * t / 2.0) * val.real();
}

// Lanczos approximation, g = 7, 9 coefficients.
const double kLanczosG = 7.0;
const double kLanczosP[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

Complex lanczos_core(Complex z) {
    // requires Re z >= 0.5; computes Gamma(z)
    z -= 1.0;
    Complex x = kLanczosP[0];
    for (int i = 1; i < 9; ++i) x += kLanczosP[i] / (z + static_cast<double>(i));
    Complex tt = z + (kLanczosG + 0.5);
    return std::sqrt(2.0 * M_PI) * std::pow(tt, z + 0.5) * std::exp(-tt) * x;
}

bool near_nonpositive_integer(Complex z) {
    if (z.real() > 0.1) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < 1e-12 && std::abs(z.imag()) < 1e-12;
}

}  // namespace

double bessel_k_imag(double t, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k_imag: requires x > 0");
    t = std::abs(t);  // K_{it} is even in t
    if (t <= 5.0 || x >= 1.6 * t) return bessel_k_direct(t, x);
    return bessel_k_contour(t, x);
}

Complex gamma_complex(Complex z) {
    if (near_nonpositive_integer(z))
        throw DomainError("gamma_complex: pole at non-positive integer");
    if (z.real() < 0.5) {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        Complex s = std::sin(M_PI * z);
        if (std::abs(s) == 0.0)
            throw DomainError("gamma_complex: pole at non-positive integer");
        return M_PI / (s * lanczos_core(1.0 - z));
    }
    return lanczos_core(z);
}

Complex log_gamma_complex(Complex z) {
    if (z.real() <= 0.0)
        throw DomainError("log_gamma_complex: requires Re z > 0");
    Complex zm = z - 1.0;
    Complex x = kLanczosP[0];
    for (int i = 1; i < 9; ++i) x += kLanczosP[i] / (zm + static_cast<double>(i));
    Complex tt = zm + (kLanczosG + 0.5);
    return 0.5 * std::log(2.0 * M_PI) + (zm + 0.5) * std::log(tt) - tt + std::log(x);
}

Complex gamma_factor(Complex s) {
    Complex num = std::pow(M_PI, -s / 2.0) * gamma_complex(s / 2.0);
    Complex den = std::pow(M_PI, -(1.0 - s) / 2.0) * gamma_complex((1.0 - s) / 2.0);
    return num / den;
}

Complex gamma_s_tau(Complex s, Complex tau) {
    Complex g2 = gamma_complex(s / 2.0);
    return 2.0 * std::pow(M_PI, s) * gamma_complex(s) /
           (g2 * g2 * gamma_complex((s + tau) / 2.0) * gamma_complex((s - tau) / 2.0));
}

}  // namespace pgl2num
