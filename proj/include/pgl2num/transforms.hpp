// Integral transforms on tensor vectors: the flat (Mellin-type) transform
// on the plane, the sharp (spherical) transform on the circle, traces,
// Fourier weights, and the one-dimensional model transform psi^flat.
#pragma once

#include <functional>
#include <optional>

#include "pgl2num/quadrature.hpp"

namespace pgl2num {

enum class TensorModel { Plane, Torus };

// Construction record for the w_{N,T} / u_{N,T} style families.
struct TensorRecord {
    double modulation = 0.0;   // carrier frequency in the x-y direction
    double scale = 1.0;        // the window scale T
};

// Two-variable vector of E = V (x) conj(V), as a function on R^2 or the torus.
struct TensorVector {
    TensorModel model = TensorModel::Plane;
    std::function<Complex(double, double)> eval;
    // Plane tensors: support box |x - y| <= box_diff, |x + y| <= box_sum.
    double box_diff = 1.0;
    double box_sum = 1.0;
    std::optional<TensorRecord> record;
};

// Smooth function on the circle with support metadata.
struct CircleFunction {
    Integrand eval;
    double support_radius = M_PI;     // supp within [-radius, radius] mod 2pi
    double carrier_freq = 0.0;        // modulation frequency, if any
    bool degenerate_support_ack = false;  // caller acknowledges support near
                                          // the degenerate points +-pi/4, +-3pi/4
};

// w^flat(s) = intint w(x,y) |x-y|^{(-s-1)/2} dx dy, evaluated in rotated
// coordinates u = x - y, v = x + y with Jacobian 1/2.
Complex flat_transform(const TensorVector& w, Complex s,
                       const QuadratureSpec& spec = {});

// alpha(t) = (1/2) int w((v+t)/2, (v-t)/2) dv, the diagonal profile fixed
// so that int alpha(t) |t|^{(-s-1)/2} dt = w^flat(s) holds exactly.
std::function<Complex(double)> alpha_of_w(const TensorVector& w,
                                          const QuadratureSpec& spec = {});

// int alpha(t) |t|^{(-s-1)/2} dt over [-radius, radius]; the transform
// paired with alpha_of_w.
Complex flat_mellin(const std::function<Complex(double)>& alpha, Complex s,
                    double radius, double carrier_freq = 0.0,
                    const QuadratureSpec& spec = {});

// int_0^inf alpha(t) t^{s-1} dt for alpha supported in (0, radius].
Complex mellin_halfline(const std::function<Complex(double)>& alpha, Complex s,
                        double lo, double hi, const QuadratureSpec& spec = {});

// Tr(w) = int w(x, x) dx.
Complex trace(const TensorVector& w, const QuadratureSpec& spec = {});

enum class SharpMode { Direct, Asymptotic, Auto };

// u^sharp(lambda) = (1/(2 pi)^2) int u(c) k_lambda(c) dc.  Direct mode uses
// the factored kernel quadrature; Asymptotic mode substitutes the two-term
// stationary-phase kernel (crossover |lambda| >= 40 in Auto mode).
Complex sharp_transform(const CircleFunction& u, Complex tau, Complex lambda,
                        const QuadratureSpec& spec = {},
                        SharpMode mode = SharpMode::Direct);

// psi^flat(xi, s) = int psi(t) e^{-i xi t} |t|^{-1/2 - s} dt for a bump psi
// supported in [-1, 1].
Complex psi_flat(const Integrand& psi, double xi, Complex s,
                 const QuadratureSpec& spec = {});

// u-hat(n) = (1/2pi) int u(c) e^{-i n c} dc.
Complex circle_fourier(const CircleFunction& u, int n,
                       const QuadratureSpec& spec = {});

// The antidiagonal spectral weight w-hat(k, -k) =
// intint w(x,y) e^{-i k (x - y)} dx dy.
Complex weight_hat(const TensorVector& w, double k,
                   const QuadratureSpec& spec = {});

}  // namespace pgl2num
