#include "pgl2num/trilinear.hpp"

#include <cmath>

namespace pgl2num {

namespace {

Complex abs_pow(double x, Complex s) {
    return std::exp(s * std::log(std::abs(x)));
}

void require_off_singular(double v, const char* what) {
    if (v == 0.0)
        throw DomainError(std::string(what) + ": evaluation on the singular set");
}

}  // namespace

Complex kernel_line(Complex tau, Complex s, double x, double y, double z) {
    require_off_singular(x - y, "kernel_line");
    require_off_singular(x * z - 1.0, "kernel_line");
    require_off_singular(y * z - 1.0, "kernel_line");
    return abs_pow(x - y, (-s - 1.0) / 2.0) *
           abs_pow(x * z - 1.0, (-2.0 * tau + s - 1.0) / 2.0) *
           abs_pow(y * z - 1.0, (2.0 * tau + s - 1.0) / 2.0);
}

Complex kernel_circle(Complex tau, Complex lambda, double t, double t1, double t2) {
    require_off_singular(std::sin(t - t1), "kernel_circle");
    require_off_singular(std::sin(t - t2), "kernel_circle");
    require_off_singular(std::sin(t1 - t2), "kernel_circle");
    return abs_pow(std::sin(t - t1), (-1.0 - lambda) / 2.0) *
           abs_pow(std::sin(t - t2), (-1.0 - 2.0 * tau + lambda) / 2.0) *
           abs_pow(std::sin(t1 - t2), (-1.0 + 2.0 * tau + lambda) / 2.0);
}

double distance_to_exceptional(double c) {
    double m = std::fmod(std::abs(c), M_PI / 2.0);
    return std::min(m, M_PI / 2.0 - m);
}

namespace {

// 2pi-periodic cubic-interpolated table of a smooth circle function.
class CircleTable {
  public:
    CircleTable(const Integrand& f, int n) : n_(n), vals_(n) {
        for (int i = 0; i < n; ++i) vals_[i] = f(2.0 * M_PI * i / n);
    }
    Complex operator()(double t) const {
        double s = t * n_ / (2.0 * M_PI);
        long i = static_cast<long>(std::floor(s));
        double x = s - i;
        auto at = [&](long k) {
            long idx = (k % n_ + n_) % n_;
            return vals_[idx];
        };
        Complex p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
        return p1 + 0.5 * x * (p2 - p0 +
               x * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                    x * (3.0 * (p1 - p2) + p3 - p0)));
    }

  private:
    int n_;
    std::vector<Complex> vals_;
};

}  // namespace

Complex trilinear_functional(Complex tau, Complex lambda,
                             const ModelVector& v1, const ModelVector& v2,
                             const ModelVector& v3, const QuadratureSpec& spec) {
    if (v1.model != Model::Circle || v2.model != Model::Circle ||
        v3.model != Model::Circle)
        throw DomainError("trilinear_functional: circle-model vectors required");

    const Complex e12 = (-1.0 - lambda) / 2.0;
    const Complex e13 = (-1.0 - 2.0 * tau + lambda) / 2.0;
    const Complex e23 = (-1.0 + 2.0 * tau + lambda) / 2.0;

    // Rotation reduction: with t1 = t + a, t2 = t + b the kernel depends on
    // (a, b) only, and the t-average
    //   P(a, b) = (1/2pi) int v1(t) v2(t+a) v3(t+b) dt
    // is smooth and periodic -- a fixed trapezoid over tabulated vectors.
    // The trapezoid nodes sit on every ratio-th table point, so one set of
    // interpolation weights serves a whole profile sum.
    const int ngrid = 4096, ntrap = 256, ratio = ngrid / ntrap;
    CircleTable T2(v2.eval, ngrid);
    std::vector<Complex> vals3(ngrid);
    for (int i = 0; i < ngrid; ++i) vals3[i] = v3.eval(2.0 * M_PI * i / ngrid);
    std::vector<Complex> base1(ntrap);
    for (int j = 0; j < ntrap; ++j)
        base1[j] = v1.eval(2.0 * M_PI * j / ntrap) / static_cast<double>(ntrap);

    std::vector<Complex> W(ntrap);  // base1[j] * v2(t_j + a), current a
    auto set_a = [&](double a) {
        for (int j = 0; j < ntrap; ++j)
            W[j] = base1[j] * T2(2.0 * M_PI * j / ntrap + a);
    };
    auto P = [&](double b) {
        double s = b * ngrid / (2.0 * M_PI);
        double fl = std::floor(s);
        long i0 = static_cast<long>(fl);
        double x = s - fl;
        double w0 = 0.5 * x * (-1.0 + x * (2.0 - x));
        double w1 = 1.0 + 0.5 * x * x * (-5.0 + 3.0 * x);
        double w2 = 0.5 * x * (1.0 + x * (4.0 - 3.0 * x));
        double w3 = 0.5 * x * x * (-1.0 + x);
        Complex acc{0.0};
        for (int j = 0; j < ntrap; ++j) {
            long k = j * ratio + i0;
            long k0 = ((k - 1) % ngrid + ngrid) % ngrid;
            long k1 = (k % ngrid + ngrid) % ngrid;
            long k2 = (k1 + 1) % ngrid;
            long k3 = (k1 + 2) % ngrid;
            acc += W[j] * (w0 * vals3[k0] + w1 * vals3[k1] + w2 * vals3[k2] +
                           w3 * vals3[k3]);
        }
        return acc;
    };

    // Inner integral over b at fixed a: singular at b = 0, a (mod pi).
    auto inner_exact = [&](double a) {
        QuadratureSpec si;
        si.rel_tol = std::max(spec.rel_tol * 0.3, 1e-8);
        si.abs_tol = spec.abs_tol * 0.1;
        si.max_subdivisions = 2000;
        for (double shift : {0.0, M_PI, 2.0 * M_PI})
            si.singularities.push_back({shift, e13});
        for (double shift : {0.0, M_PI, -M_PI, 2.0 * M_PI, -2.0 * M_PI})
            si.singularities.push_back({a + shift, e23});
        double fr = 0.5 * (std::abs(lambda.imag()) + 2.0 * std::abs(tau.imag()));
        if (fr > 0.0) si.oscillation_freqs.push_back(fr);
        set_a(a);
        auto f = [&](double b) {
            return P(b) * abs_pow(std::sin(b), e13) *
                   abs_pow(std::sin(a - b), e23);
        };
        return integrate_circle(f, si).value;
    };

    // As a -> 0 (mod pi) the two b-singularities merge; below the switch
    // distance use the two-term form C1 + C2 |a|^{lambda}, fitted per side
    // where the expansion already holds to ~1e-4.
    const double d_switch = 1e-4;
    struct SideModel {
        bool ready = false;
        Complex c1, c2;
    };
    SideModel models[2][2];  // [near 0 / near pi][side]
    auto inner = [&](double a) mutable {
        double d = std::remainder(a, M_PI);
        if (std::abs(d) >= d_switch) return inner_exact(a);
        double base = std::remainder(a - d, 2.0 * M_PI);  // 0 or +-pi
        int which = std::abs(base) > 1.0 ? 1 : 0;
        int side = d >= 0 ? 1 : 0;
        SideModel& m = models[which][side];
        if (!m.ready) {
            double sgn = d >= 0 ? 1.0 : -1.0;
            double da = d_switch;
            double db = d_switch *
                        std::exp(M_PI / std::max(2.0 * std::abs(lambda.imag()), 4.0));
            Complex Ia = inner_exact(base + sgn * da);
            Complex Ib = inner_exact(base + sgn * db);
            Complex pa = std::exp(lambda * std::log(da));
            Complex pb = std::exp(lambda * std::log(db));
            m.c2 = (Ia - Ib) / (pa - pb);
            m.c1 = Ia - m.c2 * pa;
            m.ready = true;
        }
        double ad = std::max(std::abs(d), 1e-280);
        return m.c1 + m.c2 * std::exp(lambda * std::log(ad));
    };

    QuadratureSpec so;
    so.rel_tol = spec.rel_tol > 0.0 && spec.rel_tol < 1.0 ? spec.rel_tol : 1e-5;
    so.abs_tol = spec.abs_tol;
    so.max_subdivisions = 3000;
    for (double shift : {0.0, M_PI, 2.0 * M_PI})
        so.singularities.push_back({shift, e12});
    double fr = 0.5 * (std::abs(lambda.imag()) + 2.0 * std::abs(tau.imag()));
    if (fr > 0.0) so.oscillation_freqs.push_back(fr);
    auto f = [&](double a) { return inner(a) * abs_pow(std::sin(a), e12); };
    Complex v = integrate_circle(f, so).value;
    return v / std::pow(2.0 * M_PI, 2);
}

Complex k_big_lambda_tau(Complex tau, Complex lambda, double c,
                         const QuadratureSpec& spec_in) {
    if (distance_to_exceptional(c) < 1e-14)
        throw DomainError("k_big_lambda_tau: c lies in the exceptional set");
    const Complex em = -0.5 - tau + lambda / 2.0;
    const Complex ep = -0.5 + tau + lambda / 2.0;
    QuadratureSpec spec = spec_in;
    spec.singularities.clear();
    for (double shift : {0.0, M_PI, -M_PI, 2.0 * M_PI})
        for (double sgn : {+1.0, -1.0}) {
            spec.singularities.push_back({sgn * c + shift, sgn > 0 ? em : ep});
        }
    // Unimodular oscillation from the imaginary parts of the exponents.
    double fr = 0.5 * std::abs(lambda.imag()) + std::abs(tau.imag());
    if (fr > 0.0) spec.oscillation_freqs.push_back(fr);
    if (spec.rel_tol <= 0.0 || spec.rel_tol >= 1.0) spec.rel_tol = 1e-8;
    auto f = [&](double t) {
        return abs_pow(std::sin(t - c), em) * abs_pow(std::sin(t + c), ep);
    };
    return integrate_circle(f, spec).value / (2.0 * M_PI);
}

Complex k_lambda(Complex tau, Complex lambda, double c,
                 const QuadratureSpec& spec) {
    Complex K = k_big_lambda_tau(tau, lambda, c, spec);
    return abs_pow(std::sin(2.0 * c), -0.5 - lambda / 2.0) * K;
}

Complex k_lambda_direct(Complex tau, Complex lambda, double c,
                        const QuadratureSpec& spec_in) {
    if (distance_to_exceptional(c) < 1e-14)
        throw DomainError("k_lambda_direct: c lies in the exceptional set");
    const double t = 2.0 * c, t1 = 0.0;
    const Complex e13 = (-1.0 - 2.0 * tau + lambda) / 2.0;
    const Complex e23 = (-1.0 + 2.0 * tau + lambda) / 2.0;
    QuadratureSpec spec = spec_in;
    spec.singularities.clear();
    for (double base : {t, t1})
        for (double shift : {0.0, M_PI, -M_PI, 2.0 * M_PI, -2.0 * M_PI})
            spec.singularities.push_back({base + shift, base == t ? e13 : e23});
    double fr = std::abs(lambda.imag()) + std::abs(tau.imag());
    if (fr > 0.0) spec.oscillation_freqs.push_back(fr);
    if (spec.rel_tol <= 0.0 || spec.rel_tol >= 1.0) spec.rel_tol = 1e-8;
    auto f = [&](double t2) { return kernel_circle(tau, lambda, t, t1, t2); };
    return integrate_circle(f, spec).value / (2.0 * M_PI);
}

}  // namespace pgl2num
