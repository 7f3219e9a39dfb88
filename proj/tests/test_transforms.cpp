#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pgl2num/test_vectors.hpp"
#include "pgl2num/transforms.hpp"
#include "pgl2num/trilinear.hpp"

using namespace pgl2num;

namespace {

double bump(double t, double r) { return smooth_bump(t, r); }

Complex abs_pow(double x, Complex s) {
    return std::exp(s * std::log(std::abs(x)));
}

TensorVector separable(double r1, double r2) {
    TensorVector w;
    w.model = TensorModel::Plane;
    w.box_diff = r1;
    w.box_sum = r2;
    w.eval = [r1, r2](double x, double y) {
        return Complex(bump(x - y, r1) * bump(x + y, r2), 0.0);
    };
    return w;
}

}  // namespace

TEST_CASE("flat transform of a separable tensor") {
    // w(x,y) = psi(x-y) psi2(x+y):
    // w^flat(s) = (1/2) (int psi2) int psi(u) |u|^{(-s-1)/2} du
    TensorVector w = separable(0.8, 0.9);
    Complex s(0.0, 3.0);
    Complex v = flat_transform(w, s);

    QuadratureSpec q;
    q.rel_tol = 1e-11;
    Complex i2 = integrate_1d([](double t) { return Complex(bump(t, 0.9)); },
                              -0.9, 0.9, q).value;
    QuadratureSpec qs;
    qs.rel_tol = 1e-11;
    qs.singularities = {{0.0, (-s - 1.0) / 2.0}};
    Complex i1 = integrate_1d(
        [&](double u) { return bump(u, 0.8) * abs_pow(u, (-s - 1.0) / 2.0); },
        -0.8, 0.8, qs).value;
    CHECK(std::abs(v - 0.5 * i2 * i1) <= 1e-8 * std::abs(v));
}

TEST_CASE("flat transform equals the degenerate line-kernel pairing") {
    // at z = 0 the line kernel collapses to |x-y|^{(-s-1)/2}
    Complex tau(0.0, 2.0), s(0.0, 1.5);
    TensorVector w = separable(0.7, 0.7);
    Complex lhs = flat_transform(w, s);
    // brute nested quadrature of w(x,y) K(tau, s, x, y, 0), no rotation
    QuadratureSpec qy;
    qy.rel_tol = 1e-7;
    qy.abs_tol = 1e-9;
    auto outer = [&](double y) {
        QuadratureSpec qx;
        qx.rel_tol = 1e-10;
        qx.singularities = {{y, (-s - 1.0) / 2.0}};
        return integrate_1d(
                   [&](double x) {
                       return w.eval(x, y) * kernel_line(tau, s, x, y, 0.0);
                   },
                   -0.75, 0.75, qx)
            .value;
    };
    Complex rhs = integrate_1d(outer, -0.75, 0.75, qy).value;
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(lhs));
}

TEST_CASE("diagonal profile and trace") {
    TensorVector w = separable(0.8, 0.9);
    auto alpha = alpha_of_w(w);

    // separable: alpha(t) = psi(t) * (1/2) int psi2
    QuadratureSpec q;
    Complex i2 = integrate_1d([](double t) { return Complex(bump(t, 0.9)); },
                              -0.9, 0.9, q).value;
    for (double t : {0.0, 0.3, -0.55})
        CHECK(std::abs(alpha(t) - bump(t, 0.8) * 0.5 * i2) <= 1e-10);

    // alpha(0) = Tr(w)
    Complex tr = trace(w);
    CHECK(std::abs(alpha(0.0) - tr) <= 1e-10 * std::abs(tr));

    // symmetric w gives an even alpha
    CHECK(std::abs(alpha(0.4) - alpha(-0.4)) <= 1e-12);

    // w vanishing on the diagonal
    TensorVector wv = w;
    wv.eval = [](double x, double y) {
        return Complex((x - y) * (x - y) * bump(x - y, 0.8) * bump(x + y, 0.9));
    };
    CHECK(std::abs(trace(wv)) <= 1e-14);
}

TEST_CASE("Mellin consistency of the diagonal profile") {
    TensorVector w = separable(0.8, 0.9);
    auto alpha = alpha_of_w(w);
    for (double si : {0.7, 2.0, -1.3}) {
        Complex s(0.0, si);
        Complex a = flat_mellin(alpha, s, 0.8);
        Complex b = flat_transform(w, s);
        CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)));
    }
    // a non-separable tensor
    TensorVector w2 = separable(0.8, 0.9);
    w2.eval = [](double x, double y) {
        return Complex(bump(x - y, 0.8) * bump(x + y, 0.9) * (1.0 + 0.3 * x),
                       0.1 * bump(x - y, 0.8) * bump(x + y, 0.9) * y);
    };
    auto alpha2 = alpha_of_w(w2);
    Complex s(0.0, 1.1);
    CHECK(std::abs(flat_mellin(alpha2, s, 0.8) - flat_transform(w2, s)) <=
          1e-6 * std::abs(flat_transform(w2, s)));
}

TEST_CASE("psi_flat basics and oracle value") {
    auto psi = [](double t) { return Complex(bump(t, 0.9), 0.0); };

    SUBCASE("even psi at xi = 0, s = 0 reduces to the half-line integral") {
        Complex v = psi_flat(psi, 0.0, Complex(0.0));
        QuadratureSpec q;
        q.rel_tol = 1e-11;
        q.singularities = {{0.0, Complex(-0.5, 0.0)}};
        Complex half = integrate_1d(
            [&](double t) { return psi(t) * std::pow(t, -0.5); }, 0.0, 0.9, q)
            .value;
        CHECK(std::abs(v - 2.0 * half) <= 1e-9 * std::abs(v));
    }
    SUBCASE("conjugation for a real bump") {
        Complex a = psi_flat(psi, 7.0, Complex(0.0, 2.0));
        Complex b = psi_flat(psi, -7.0, Complex(0.0, -2.0));
        CHECK(std::abs(b - std::conj(a)) <= 1e-9);
    }
    SUBCASE("oscillatory value against a fixed-node oracle") {
        // xi = 40, s = 10i: a small central piece by the local expansion of
        // psi(t) e^{-i xi t} (odd powers drop), the rest by composite
        // Simpson under the power substitution t = +-u^2
        double xi = 40.0;
        Complex s(0.0, 10.0);
        Complex v = psi_flat(psi, xi, s);

        const double t0 = 1e-3;
        double p0 = psi(0.0).real();
        double p2 = p0 * (-2.0 / (0.9 * 0.9));  // psi''(0) of the exp bump
        Complex c0(p0, 0.0);
        Complex c2(p2 / 2.0 - xi * xi * p0 / 2.0, 0.0);
        auto Tk = [&](double k) {
            return std::exp((k + 0.5 - s) * std::log(t0)) / (k + 0.5 - s);
        };
        Complex acc = 2.0 * (c0 * Tk(0.0) + c2 * Tk(2.0));

        auto g = [&](double u, double sgn) {
            double t = sgn * u * u;
            Complex ph(std::cos(xi * t), -std::sin(xi * t));
            Complex p = std::exp(-2.0 * s * std::log(u));
            return psi(t) * ph * p * 2.0;
        };
        const long n = (1 << 17) + 1;
        for (double sgn : {1.0, -1.0}) {
            double lo = std::sqrt(t0), U = std::sqrt(0.9);
            double h = (U - lo) / (n - 1);
            Complex ssum = g(lo, sgn) + g(U, sgn);
            for (long i = 1; i < n - 1; ++i)
                ssum += (i % 2 ? 4.0 : 2.0) * g(lo + i * h, sgn);
            acc += ssum * h / 3.0;
        }
        CHECK(std::abs(v - acc) <= 1e-6 * std::max(1.0, std::abs(acc)));
    }
}

TEST_CASE("circle Fourier coefficients and Parseval") {
    CircleFunction u;
    u.eval = [](double c) {
        return Complex(std::cos(2.0 * c) + 0.5, std::sin(4.0 * c));
    };
    // u = e^{2ic}/2 + e^{-2ic}/2 + 1/2 + (e^{4ic} - e^{-4ic})/2
    CHECK(std::abs(circle_fourier(u, 2) - Complex(0.5)) < 1e-12);
    CHECK(std::abs(circle_fourier(u, 0) - Complex(0.5)) < 1e-12);
    CHECK(std::abs(circle_fourier(u, 4) - Complex(0.5)) < 1e-12);
    CHECK(std::abs(circle_fourier(u, -4) - Complex(-0.5)) < 1e-12);
    CHECK(std::abs(circle_fourier(u, 6)) < 1e-12);

    // Parseval: sum |u-hat(n)|^2 = (1/2pi) int |u|^2
    double lhs = 0.0;
    for (int n = -8; n <= 8; ++n) lhs += std::norm(circle_fourier(u, n));
    QuadratureSpec q;
    Complex rhs = integrate_circle(
        [&](double c) { return Complex(std::norm(u.eval(c)), 0.0); }, q).value;
    CHECK(lhs == doctest::Approx(rhs.real() / (2.0 * M_PI)).epsilon(1e-8));
}

TEST_CASE("sharp transform: linearity and degenerate-support guard") {
    Complex tau(0.0, 2.0), lam(0.0, 6.0);
    CircleFunction u1;
    u1.eval = [](double c) { return Complex(bump(c - 0.55, 0.12), 0.0); };
    u1.support_radius = 0.67;
    CircleFunction u2 = u1;
    u2.eval = [](double c) { return Complex(0.4 * bump(c - 0.62, 0.1), 0.0); };
    CircleFunction usum = u1;
    usum.eval = [&](double c) { return u1.eval(c) + u2.eval(c); };

    // a support reaching the degenerate points needs the acknowledgment
    CircleFunction uwide = u1;
    uwide.support_radius = 0.79;
    CHECK_THROWS_AS(sharp_transform(uwide, tau, lam), DomainError);

    Complex a = sharp_transform(u1, tau, lam);
    Complex b = sharp_transform(u2, tau, lam);
    Complex c = sharp_transform(usum, tau, lam);
    CHECK(std::abs(c - a - b) <= 1e-5 * std::abs(c));
}

TEST_CASE("sharp transform against the three-variable kernel average") {
    // With w(t, t') = u((t - t')/2) summed over the half-angle branches,
    // (1/(2pi)^3) intintint w K dt dt' dt'' = 4 pi u^sharp(lambda).
    Complex tau(0.0, 2.0), lam(0.0, 10.0);
    const Complex e12 = (-1.0 - lam) / 2.0;
    const Complex e13 = (-1.0 - 2.0 * tau + lam) / 2.0;
    const Complex e23 = (-1.0 + 2.0 * tau + lam) / 2.0;
    CircleFunction u;
    u.eval = [](double c) { return Complex(bump(c - 0.6, 0.15), 0.0); };
    u.support_radius = 0.75;
    u.degenerate_support_ack = true;

    Complex sharp = sharp_transform(u, tau, lam);

    // rotation-reduced 3D oracle: (1/(2pi)^2) iint u_w(-a/2)
    //   |sin a|^{e12} |sin b|^{e13} |sin(a-b)|^{e23} db da
    auto u_w = [&](double half) {
        return u.eval(half) + u.eval(half + M_PI);
    };
    auto inner = [&](double a) {
        QuadratureSpec si;
        si.rel_tol = 1e-9;
        si.abs_tol = 3e-11;
        si.max_subdivisions = 20000;
        for (double shift : {0.0, M_PI, 2.0 * M_PI})
            si.singularities.push_back({shift, e13});
        for (double shift : {0.0, M_PI, -M_PI, 2.0 * M_PI, -2.0 * M_PI})
            si.singularities.push_back({a + shift, e23});
        si.oscillation_freqs.push_back(6.0);
        return integrate_circle(
                   [&](double b) {
                       return abs_pow(std::sin(b), e13) *
                              abs_pow(std::sin(a - b), e23);
                   },
                   si)
            .value;
    };
    QuadratureSpec so;
    so.rel_tol = 1e-5;
    so.abs_tol = 3e-8;
    so.max_subdivisions = 20000;
    for (double shift : {0.0, M_PI, 2.0 * M_PI})
        so.singularities.push_back({shift, e12});
    so.oscillation_freqs.push_back(6.0);
    Complex oracle = integrate_circle(
                         [&](double a) {
                             Complex uu = u_w(-a / 2.0);
                             if (std::abs(uu) == 0.0) return Complex(0.0);
                             return uu * abs_pow(std::sin(a), e12) * inner(a);
                         },
                         so)
                         .value /
                     std::pow(2.0 * M_PI, 2);
    CHECK(std::abs(oracle - 4.0 * M_PI * sharp) <= 1e-4 * std::abs(oracle));
}

TEST_CASE("weight_hat of a modulated separable tensor") {
    // w = T e^{iN(x-y)} psi(T(x-y)) psi(x+y):
    // w-hat(k,-k) = (1/2) psihat(0) psihat((k-N)/T)
    auto psi = std::make_shared<Bump>(BumpSpec{1.0, 2.2, 1.0});
    double N = 64.0, T = 16.0;
    TensorVector w = w_NT(N, T, psi);
    double ph0 = psi->fourier(0.0);
    for (double k : {64.0, 56.0, 80.0, 30.0}) {
        Complex v = weight_hat(w, k);
        double expect = 0.5 * ph0 * psi->fourier((k - N) / T);
        CHECK(std::abs(v - Complex(expect)) <= 1e-7 * std::max(1.0, expect));
    }
}
