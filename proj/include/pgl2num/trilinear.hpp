// Trilinear invariant-functional kernels in the line and circle models,
// the circle-model triple integral, and the rotation-averaged kernel
// k_lambda with its factored one-dimensional form.
#pragma once

#include "pgl2num/models.hpp"
#include "pgl2num/quadrature.hpp"

namespace pgl2num {

// K_{tau,-tau,-s}(x,y,z) =
//   |x-y|^{(-s-1)/2} |xz-1|^{(-2 tau + s - 1)/2} |yz-1|^{(2 tau + s - 1)/2}.
// All powers are of absolute values (real logarithm, no branch cuts).
Complex kernel_line(Complex tau, Complex s, double x, double y, double z);

// K_{tau,-tau,lambda}(t, t', t'') =
//   |sin(t-t')|^{(-1-lambda)/2} |sin(t-t'')|^{(-1-2 tau+lambda)/2}
//   |sin(t'-t'')|^{(-1+2 tau+lambda)/2}.
Complex kernel_circle(Complex tau, Complex lambda, double t, double t1, double t2);

// The circle-model trilinear functional
//   (1/(2 pi)^3) intint int v1(t) v2(t') v3(t'') K_{tau,-tau,lambda} dt dt' dt''
// with v1 in V_tau, v2 in V_{-tau}, v3 in V_{-lambda}; evaluated as an
// iterated integral with the singular diagonals annotated.
Complex trilinear_functional(Complex tau, Complex lambda,
                             const ModelVector& v1, const ModelVector& v2,
                             const ModelVector& v3, const QuadratureSpec& spec);

// K_{lambda,tau}(c) = (1/2pi) int_{S^1}
//   |sin(t-c)|^{-1/2 - tau + lambda/2} |sin(t+c)|^{-1/2 + tau + lambda/2} dt,
// the one-dimensional factor of the averaged kernel.  Requires c away from
// the exceptional set S = {0, +-pi/2, pi} mod pi.
Complex k_big_lambda_tau(Complex tau, Complex lambda, double c,
                         const QuadratureSpec& spec = {});

// k_lambda(c) = |sin(2c)|^{-1/2 - lambda/2} K_{lambda,tau}(c), the
// rotation average (1/2pi) int K_{tau,-tau,lambda} dt'' at c = (t - t')/2.
Complex k_lambda(Complex tau, Complex lambda, double c,
                 const QuadratureSpec& spec = {});

// Oracle route for k_lambda: average the three-variable kernel directly,
//   (1/2pi) int K_{tau,-tau,lambda}(2c + t', t', t'') dt''   at   t' = 0,
// without using the factorization.
Complex k_lambda_direct(Complex tau, Complex lambda, double c,
                        const QuadratureSpec& spec = {});

// Distance from c to the exceptional set {0, +-pi/2, pi} mod pi.
double distance_to_exceptional(double c);

}  // namespace pgl2num
