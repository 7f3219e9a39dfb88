// Line, circle and plane models of the class-one principal series of
// PGL(2,R): group action, inner products, K-fixed vectors, Whittaker and
// K-type functionals, and the associated special functions.
#pragma once

#include <map>
#include <optional>

#include "pgl2num/quadrature.hpp"

namespace pgl2num {

// Representation parameter tau; the Casimir eigenvalue is (1 - tau^2)/4.
struct SpectralParam {
    Complex tau;
    bool principal_series = true;

    explicit SpectralParam(Complex t, bool principal = true)
        : tau(t), principal_series(principal) {
        if (principal_series && std::abs(tau.real()) > 1e-12)
            throw DomainError("SpectralParam: principal series requires Re(tau) = 0");
    }
    Complex mu() const { return (1.0 - tau * tau) / 4.0; }
};

// 2x2 real matrix modulo +-1 and scaling; stored with |det| = 1.
struct GroupElement {
    double a = 1, b = 0, c = 0, d = 1;

    GroupElement() = default;
    GroupElement(double a_, double b_, double c_, double d_);

    double det() const { return a * d - b * c; }
    GroupElement inverse() const;
    GroupElement operator*(const GroupElement& o) const;

    static GroupElement identity() { return {}; }
    static GroupElement rotation(double phi);           // [[cos,-sin],[sin,cos]]
    static GroupElement diagonal(double t);             // diag(t, 1/t)
    static GroupElement unipotent_upper(double n);      // [[1,n],[0,1]]
};

enum class Model { Line, Circle, Plane };

// Power-law tail metadata for line-model vectors: |v(x)| ~ |x|^{Re(power)}
// as |x| -> inf (needed by the Whittaker functional's tail handling).
struct LineTail {
    Complex power;   // v(x) = |x|^{power} (h0 + h2 x^{-2} + ...) at infinity
};

// A smooth vector of V_tau in one of the realizations.  Immutable after
// construction; evaluation is a pure function.
struct ModelVector {
    Model model = Model::Line;
    SpectralParam param;
    Integrand eval;                         // line: x, circle: theta
    std::optional<double> support_radius;   // line: supp within [-R, R]
    std::optional<LineTail> tail;           // line: power-law tail
    std::map<int, Complex> ktype_coeffs;    // circle: finite K-type data

    ModelVector(Model m, SpectralParam p, Integrand e)
        : model(m), param(p), eval(std::move(e)) {}
};

// pi_tau(g) f, implemented in the vector's own model.  The circle action
// pulls back through the plane model: with g^{-1}(cos t, sin t) =
// r(cos t_g, sin t_g), (pi(g) f)(t) = f(t_g) r^{tau - 1} |det g|^{(tau-1)/2}.
ModelVector act(const GroupElement& g, const SpectralParam& tau,
                const ModelVector& f);

// Hermitian pairing: (1/pi) int f conj(h) dx on the line,
// (1/2pi) int f conj(h) dtheta on the circle.
Complex inner_product(const ModelVector& f, const ModelVector& h,
                      const QuadratureSpec& spec = {});

// Unit K-fixed vector: the constant 1 on the circle; (1 + x^2)^{(tau-1)/2}
// on the line (the normalization making it a unit vector for the (1/pi) dx
// pairing, consistent with the circle model by homogeneous extension).
ModelVector k_fixed_vector(const SpectralParam& tau, Model model);

// Whittaker functional: l_xi(v) = int v(x) e^{-i xi x} dx.  Compactly
// supported vectors are integrated directly; power-tail vectors use an
// integration-by-parts tail correction.
Complex whittaker_model(double xi, const ModelVector& v,
                        const QuadratureSpec& spec = {});

// W_{tau,k}(y) = pi^{1/2} / Gamma((1-tau)/2) * y^{1/2} K_{-tau/2}(2 pi |k| y).
Complex whittaker_W(const SpectralParam& tau, int k, double y);

// P_{tau,n}(r) = (1/2pi) int_0^{2pi} (e^{-r} cos^2 t + e^r sin^2 t)^{(tau-1)/2}
//                e^{-i n t} dt,  n even.
// The matrix coefficient of the K-fixed vector against the n-th K-type
// along the geodesic flow; real for purely imaginary tau.
Complex spherical_P(const SpectralParam& tau, int n, double r);

// delta_s(f) = f(0) in the line model.
Complex delta_functional(const ModelVector& f);

// n-th K-type coefficient (1/2pi) int v(t) e^{-i n t} dt, n even.
// Under rotation k_phi the coefficient transforms by chi_n(k_phi) = e^{-i n phi}.
Complex d_mod(int n, const ModelVector& v, const QuadratureSpec& spec = {});

}  // namespace pgl2num
