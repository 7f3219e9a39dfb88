#include "pgl2num/transforms.hpp"

#include <cmath>

#include "pgl2num/asymptotics.hpp"
#include "pgl2num/trilinear.hpp"

namespace pgl2num {

namespace {

Complex abs_pow(double x, Complex s) {
    return std::exp(s * std::log(std::abs(x)));
}

QuadratureSpec with_default(const QuadratureSpec& s, double rel) {
    QuadratureSpec out = s;
    if (out.rel_tol <= 0.0 || out.rel_tol >= 1.0) out.rel_tol = rel;
    return out;
}

}  // namespace

Complex flat_transform(const TensorVector& w, Complex s,
                       const QuadratureSpec& spec_in) {
    if (w.model != TensorModel::Plane)
        throw DomainError("flat_transform: plane tensor required");
    QuadratureSpec spec = with_default(spec_in, 1e-8);
    const Complex es = (-s - 1.0) / 2.0;
    double carrier = w.record ? w.record->modulation : 0.0;

    // inner: (1/2) int over v at fixed u
    auto inner = [&](double u) {
        QuadratureSpec si;
        si.rel_tol = std::max(spec.rel_tol * 0.1, 1e-11);
        si.abs_tol = spec.abs_tol * 0.1;
        auto f = [&](double v) { return w.eval((v + u) / 2.0, (v - u) / 2.0); };
        return 0.5 * integrate_1d(f, -w.box_sum, w.box_sum, si).value;
    };
    QuadratureSpec so = spec;
    so.singularities = {{0.0, es}};
    double fr = std::abs(carrier) + 0.5 * std::abs(s.imag());
    if (fr > 0.0) so.oscillation_freqs.push_back(fr);
    auto f = [&](double u) { return inner(u) * abs_pow(u, es); };
    return integrate_1d(f, -w.box_diff, w.box_diff, so).value;
}

std::function<Complex(double)> alpha_of_w(const TensorVector& w,
                                          const QuadratureSpec& spec_in) {
    QuadratureSpec spec = with_default(spec_in, 1e-10);
    double box = w.box_sum;
    auto ev = w.eval;
    return [ev, box, spec](double t) {
        auto f = [&](double v) { return ev((v + t) / 2.0, (v - t) / 2.0); };
        return 0.5 * integrate_1d(f, -box, box, spec).value;
    };
}

Complex flat_mellin(const std::function<Complex(double)>& alpha, Complex s,
                    double radius, double carrier_freq,
                    const QuadratureSpec& spec_in) {
    QuadratureSpec spec = with_default(spec_in, 1e-8);
    spec.singularities = {{0.0, (-s - 1.0) / 2.0}};
    double fr = std::abs(carrier_freq) + 0.5 * std::abs(s.imag());
    if (fr > 0.0) spec.oscillation_freqs.push_back(fr);
    auto f = [&](double t) { return alpha(t) * abs_pow(t, (-s - 1.0) / 2.0); };
    return integrate_1d(f, -radius, radius, spec).value;
}

Complex mellin_halfline(const std::function<Complex(double)>& alpha, Complex s,
                        double lo, double hi, const QuadratureSpec& spec_in) {
    QuadratureSpec spec = with_default(spec_in, 1e-10);
    if (std::abs(s.imag()) > 0.0)
        spec.oscillation_freqs.push_back(std::abs(s.imag()) / std::max(lo, 1e-6));
    auto f = [&](double t) { return alpha(t) * std::exp((s - 1.0) * std::log(t)); };
    return integrate_1d(f, lo, hi, spec).value;
}

Complex trace(const TensorVector& w, const QuadratureSpec& spec_in) {
    QuadratureSpec spec = with_default(spec_in, 1e-10);
    // diagonal x = y: |x - y| <= box_diff trivially, |2x| <= box_sum
    double R = w.box_sum / 2.0;
    auto f = [&](double x) { return w.eval(x, x); };
    return integrate_1d(f, -R, R, spec).value;
}

Complex sharp_transform(const CircleFunction& u, Complex tau, Complex lambda,
                        const QuadratureSpec& spec_in, SharpMode mode) {
    // Degenerate critical points of the kernel phase sit at +-pi/4, +-3pi/4;
    // supports reaching them need an explicit acknowledgment.
    double edge = u.support_radius;
    if (!u.degenerate_support_ack && edge > M_PI / 4.0 - 0.02)
        throw DomainError(
            "sharp_transform: support reaches the degenerate points; "
            "set degenerate_support_ack to proceed");

    bool use_asym = mode == SharpMode::Asymptotic ||
                    (mode == SharpMode::Auto && std::abs(lambda) >= 40.0);

    QuadratureSpec spec = with_default(spec_in, 1e-6);
    spec.abs_tol = std::max(spec.abs_tol, 1e-10);
    spec.singularities = {{0.0, Complex(-0.5, -lambda.imag() / 2.0)}};
    // exceptional points of the kernel inside the support range
    for (double p : {M_PI / 2.0, -M_PI / 2.0, M_PI, -M_PI})
        if (std::abs(p) < edge)
            spec.singularities.push_back({p, Complex(-0.5, -lambda.imag() / 2.0)});
    double fr = std::abs(u.carrier_freq) + std::abs(lambda.imag());
    if (fr > 0.0) spec.oscillation_freqs.push_back(fr);

    // the kernel quadrature runs well below the outer tolerance so the
    // outer refinement is not chasing inner noise
    QuadratureSpec kspec;
    kspec.rel_tol = std::max(spec.rel_tol * 1e-3, 1e-10);
    kspec.abs_tol = 1e-300;

    auto make_f = [&](const QuadratureSpec& kq) {
        return [&, kq](double c) {
            Complex uc = u.eval(c);
            if (uc == Complex(0.0)) return Complex(0.0);
            Complex k = use_asym ? k_lambda_asymptotic(tau, lambda, c)
                                 : k_lambda(tau, lambda, c, kq);
            return uc * k;
        };
    };
    // loose first pass fixes the |u k| mass; the final absolute tolerance
    // then sits above the inner-quadrature noise floor, and the kernel
    // quadrature gets the matching per-point absolute budget
    QuadratureSpec probe = spec;
    probe.rel_tol = 1e-2;
    probe.abs_tol = 1e-4;
    QuadratureSpec kprobe = kspec;
    kprobe.rel_tol = 1e-6;
    kprobe.abs_tol = 1e-8;
    QuadResult rough = integrate_1d(make_f(kprobe), -edge, edge, probe);
    QuadratureSpec um;
    um.rel_tol = 1e-3;
    um.abs_tol = 1e-8;
    double umass = integrate_1d(
                       [&](double c) { return Complex(std::abs(u.eval(c)), 0.0); },
                       -edge, edge, um)
                       .value.real();
    spec.abs_tol = std::max(spec.abs_tol, 10.0 * kspec.rel_tol * rough.l1);
    kspec.abs_tol = 0.3 * spec.abs_tol / std::max(umass, 1e-30);
    kspec.max_subdivisions = 20000;
    Complex v = integrate_1d(make_f(kspec), -edge, edge, spec).value;
    return v / std::pow(2.0 * M_PI, 2);
}

Complex psi_flat(const Integrand& psi, double xi, Complex s,
                 const QuadratureSpec& spec_in) {
    QuadratureSpec spec = with_default(spec_in, 1e-9);
    spec.singularities = {{0.0, -0.5 - s}};
    double fr = std::abs(xi) + std::abs(s.imag());
    if (fr > 0.0) spec.oscillation_freqs.push_back(fr);
    auto f = [&](double t) {
        return psi(t) * Complex(std::cos(xi * t), -std::sin(xi * t)) *
               abs_pow(t, -0.5 - s);
    };
    return integrate_1d(f, -1.0, 1.0, spec).value;
}

Complex circle_fourier(const CircleFunction& u, int n,
                       const QuadratureSpec& spec_in) {
    QuadratureSpec spec = with_default(spec_in, 1e-10);
    spec.abs_tol = std::max(spec.abs_tol, 1e-12);  // near-orthogonal modes
    double fr = std::abs(u.carrier_freq) + std::abs(n);
    if (fr > 0.0) spec.oscillation_freqs.push_back(fr);
    auto f = [&](double c) {
        return u.eval(c) * Complex(std::cos(n * c), -std::sin(n * c));
    };
    double R = u.support_radius;
    Complex v = (R < M_PI) ? integrate_1d(f, -R, R, spec).value
                           : integrate_circle(f, spec).value;
    return v / (2.0 * M_PI);
}

Complex weight_hat(const TensorVector& w, double k,
                   const QuadratureSpec& spec_in) {
    if (w.model != TensorModel::Plane)
        throw DomainError("weight_hat: plane tensor required");
    QuadratureSpec spec = with_default(spec_in, 1e-9);
    double carrier = w.record ? w.record->modulation : 0.0;

    auto inner = [&](double u) {
        QuadratureSpec si;
        si.rel_tol = std::max(spec.rel_tol * 0.1, 1e-11);
        auto f = [&](double v) { return w.eval((v + u) / 2.0, (v - u) / 2.0); };
        return 0.5 * integrate_1d(f, -w.box_sum, w.box_sum, si).value;
    };
    QuadratureSpec so = spec;
    double fr = std::abs(k - carrier);
    if (fr > 0.0) so.oscillation_freqs.push_back(fr);
    auto f = [&](double u) {
        return inner(u) * Complex(std::cos(k * u), -std::sin(k * u));
    };
    return integrate_1d(f, -w.box_diff, w.box_diff, so).value;
}

}  // namespace pgl2num
