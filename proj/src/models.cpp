#include "pgl2num/models.hpp"

#include <cmath>

#include "pgl2num/special.hpp"

namespace pgl2num {

GroupElement::GroupElement(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
    double dt = a * d - b * c;
    if (dt == 0.0 || !std::isfinite(dt))
        throw DomainError("GroupElement: singular matrix");
    double s = 1.0 / std::sqrt(std::abs(dt));
    a *= s; b *= s; c *= s; d *= s;
}

GroupElement GroupElement::inverse() const {
    double dt = det();  // +-1 after normalization
    return {d / dt, -b / dt, -c / dt, a / dt};
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
}

GroupElement GroupElement::rotation(double phi) {
    return {std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)};
}
GroupElement GroupElement::diagonal(double t) {
    if (t == 0.0) throw DomainError("GroupElement::diagonal: t must be nonzero");
    return {t, 0.0, 0.0, 1.0 / t};
}
GroupElement GroupElement::unipotent_upper(double n) { return {1.0, n, 0.0, 1.0}; }

namespace {

// |x|^s with the real logarithm; no branch cuts anywhere.
Complex abs_pow(double x, Complex s) {
    return std::exp(s * std::log(std::abs(x)));
}

}  // namespace

ModelVector act(const GroupElement& g, const SpectralParam& tau,
                const ModelVector& f) {
    if (std::abs(g.det()) < 1e-300)
        throw DomainError("act: singular group element");
    GroupElement gi = g.inverse();
    Complex tm1 = tau.tau - 1.0;
    // |det g| = 1 after normalization, so the |det|^{(tau-1)/2} factor drops.
    if (f.model == Model::Circle) {
        Integrand base = f.eval;
        auto ev = [gi, tm1, base](double theta) {
            double ct = std::cos(theta), st = std::sin(theta);
            double wx = gi.a * ct + gi.b * st;
            double wy = gi.c * ct + gi.d * st;
            double r = std::hypot(wx, wy);
            double tg = std::atan2(wy, wx);
            return base(tg) * std::exp(tm1 * std::log(r));
        };
        ModelVector out(Model::Circle, tau, ev);
        return out;
    }
    if (f.model == Model::Line) {
        Integrand base = f.eval;
        auto ev = [gi, tm1, base](double x) {
            // g^{-1}(x, 1) = (u, v); f extends homogeneously of degree tau-1.
            double u = gi.a * x + gi.b;
            double v = gi.c * x + gi.d;
            if (v == 0.0)
                throw DomainError("act(line): image point at infinity");
            return base(u / v) * abs_pow(v, tm1);
        };
        ModelVector out(Model::Line, tau, ev);
        // A unipotent or diagonal action maps compact support to compact
        // support; keep no support metadata in general (callers reattach).
        return out;
    }
    throw DomainError("act: unsupported model");
}

Complex inner_product(const ModelVector& f, const ModelVector& h,
                      const QuadratureSpec& spec) {
    if (f.model != h.model)
        throw DomainError("inner_product: model mismatch");
    auto g = [&](double t) { return f.eval(t) * std::conj(h.eval(t)); };
    if (f.model == Model::Circle)
        return integrate_circle(g, spec).value / (2.0 * M_PI);
    if (f.model == Model::Line) {
        double R = 0.0;
        if (f.support_radius && h.support_radius)
            R = std::min(*f.support_radius, *h.support_radius);
        else if (f.support_radius)
            R = *f.support_radius;
        else if (h.support_radius)
            R = *h.support_radius;
        if (R > 0.0) return integrate_1d(g, -R, R, spec).value / M_PI;
        if (!f.tail || !h.tail)
            throw DomainError("inner_product: line vectors need support or "
                              "tail metadata");
        // power tails p_f + conj(p_h) (= -2 for the principal series):
        // truncate and add the leading x^{-2} tail correction
        const double T = 5e3;
        Complex axis = integrate_1d(g, -T, T, spec).value;
        Complex corr = T * (g(T) + g(-T));
        return (axis + corr) / M_PI;
    }
    throw DomainError("inner_product: unsupported model");
}

ModelVector k_fixed_vector(const SpectralParam& tau, Model model) {
    if (model == Model::Circle) {
        ModelVector v(Model::Circle, tau, [](double) { return Complex(1.0); });
        v.ktype_coeffs[0] = Complex(1.0);
        return v;
    }
    if (model == Model::Line) {
        Complex e = (tau.tau - 1.0) / 2.0;
        ModelVector v(Model::Line, tau, [e](double x) {
            return std::exp(e * std::log1p(x * x));
        });
        v.tail = LineTail{tau.tau - 1.0};
        return v;
    }
    throw DomainError("k_fixed_vector: unsupported model");
}

Complex whittaker_model(double xi, const ModelVector& v,
                        const QuadratureSpec& spec_in) {
    if (v.model != Model::Line)
        throw DomainError("whittaker_model: line-model vector required");
    QuadratureSpec spec = spec_in;
    if (xi != 0.0) spec.oscillation_freqs.push_back(std::abs(xi));
    auto g = [&](double x) {
        return v.eval(x) * Complex(std::cos(xi * x), -std::sin(xi * x));
    };
    if (v.support_radius)
        return integrate_1d(g, -*v.support_radius, *v.support_radius, spec).value;
    if (!v.tail)
        throw DomainError("whittaker_model: vector carries no decay metadata");

    // Power tail |x|^{p}: oscillatory tails handled by integration by parts,
    //   int_T^inf v e^{-i xi x} dx = sum_j v^{(j)}(T) e^{-i xi T}/(i xi)^{j+1} + R_m,
    // |R_m| <= ||v^{(m)}||_{L1(T,inf)} / |xi|^m, and likewise at -T.
    if (xi == 0.0)
        throw AccuracyError("whittaker_model: xi = 0 with non-integrable tail",
                            Complex(0.0), 1.0);
    double axi = std::abs(xi);
    double T = std::max(80.0, 420.0 / axi);
    Complex axis = integrate_1d(g, -T, T, spec).value;

    auto tail_ibp = [&](double sgn) {
        // derivatives of v at sgn*T by central differences
        double t0 = sgn * T;
        double hstep = 0.25;
        Complex f0 = v.eval(t0);
        Complex fp = v.eval(t0 + hstep), fm = v.eval(t0 - hstep);
        Complex fp2 = v.eval(t0 + 2 * hstep), fm2 = v.eval(t0 - 2 * hstep);
        Complex d1 = (-fp2 + 8.0 * fp - 8.0 * fm + fm2) / (12 * hstep);
        Complex d2 = (fp - 2.0 * f0 + fm) / (hstep * hstep);
        Complex ixi(0.0, xi);
        Complex e(std::cos(xi * t0), -std::sin(xi * t0));
        // int_{T}^{inf sgn} v e^{-i xi x}: for sgn=+1 boundary term at T enters
        // with +, for sgn=-1 (integral over (-inf,-T]) with -.
        Complex s = f0 / ixi + d1 / (ixi * ixi) + d2 / (ixi * ixi * ixi);
        return sgn * e * s;
    };
    Complex tails = tail_ibp(+1.0) + tail_ibp(-1.0);
    return axis + tails;
}

Complex whittaker_W(const SpectralParam& tau, int k, double y) {
    if (k == 0) throw DomainError("whittaker_W: k must be nonzero");
    if (!(y > 0.0)) throw DomainError("whittaker_W: y must be positive");
    if (std::abs(tau.tau.real()) > 1e-12)
        throw DomainError("whittaker_W: purely imaginary tau required");
    double order = -tau.tau.imag() / 2.0;  // K_{-tau/2} = K_{i * order}
    double kb = bessel_k_imag(order, 2.0 * M_PI * std::abs(k) * y);
    return std::sqrt(M_PI) / gamma_complex((1.0 - tau.tau) / 2.0) *
           std::sqrt(y) * kb;
}

Complex spherical_P(const SpectralParam& tau, int n, double r) {
    if (n % 2 != 0) throw DomainError("spherical_P: odd K-types are absent");
    if (r < 0.0) throw DomainError("spherical_P: r must be >= 0");
    Complex beta = (tau.tau - 1.0) / 2.0;
    double er = std::exp(r), emr = std::exp(-r);
    QuadratureSpec spec;
    spec.rel_tol = 1e-11;
    spec.abs_tol = 1e-13;
    if (n != 0) spec.oscillation_freqs.push_back(std::abs(n));
    auto f = [=](double t) {
        double ct = std::cos(t), st = std::sin(t);
        double base = emr * ct * ct + er * st * st;
        return std::exp(beta * std::log(base)) *
               Complex(std::cos(n * t), -std::sin(n * t));
    };
    Complex raw = integrate_circle(f, spec).value / (2.0 * M_PI);
    // Phase convention: the raw matrix coefficient equals
    // (-1)^m beta(beta-1)...(beta-m+1) times a real Legendre-type radial
    // function (m = |n|/2).  Dividing by the phase of that product makes
    // P real, positive to leading order in r.
    int m = std::abs(n) / 2;
    Complex lead{1.0};
    for (int j = 0; j < m; ++j) lead *= (beta - static_cast<double>(j));
    if (m % 2 == 1) lead = -lead;
    if (std::abs(lead) == 0.0) return raw;
    return raw * std::abs(lead) / lead;
}

Complex delta_functional(const ModelVector& f) {
    if (f.model != Model::Line)
        throw DomainError("delta_functional: line-model vector required");
    return f.eval(0.0);
}

Complex d_mod(int n, const ModelVector& v, const QuadratureSpec& spec_in) {
    if (n % 2 != 0) throw DomainError("d_mod: odd K-types are absent");
    if (v.model != Model::Circle)
        throw DomainError("d_mod: circle-model vector required");
    QuadratureSpec spec = spec_in;
    if (n != 0) spec.oscillation_freqs.push_back(std::abs(n));
    auto f = [&](double t) {
        return v.eval(t) * Complex(std::cos(n * t), -std::sin(n * t));
    };
    return integrate_circle(f, spec).value / (2.0 * M_PI);
}

}  // namespace pgl2num
