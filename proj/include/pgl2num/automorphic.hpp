// Maass-form data ingestion and the automorphic identity checks: direct
// Eisenstein summation, the unfolding identity, the coefficient Dirichlet
// series, spherical-coefficient extraction, and mean-square reports.
#pragma once

#include <string>
#include <vector>

#include "pgl2num/asymptotics.hpp"
#include "pgl2num/models.hpp"
#include "pgl2num/quadrature.hpp"

namespace pgl2num {

struct MaassFormData {
    double R = 0.0;                  // tau = 2iR, mu = 1/4 + R^2
    bool even = true;
    std::string lattice = "PSL2Z";
    std::string normalization = "hecke";
    std::vector<double> coefficients;  // a_1 .. a_Nmax
    std::string provenance;
    double mean_square_constant = 0.0;  // measured C in sum <= C max{T, 1+|tau|}

    SpectralParam tau() const { return SpectralParam(Complex(0.0, 2.0 * R)); }
    double mu() const { return 0.25 + R * R; }
    int n_max() const { return static_cast<int>(coefficients.size()); }
};

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse and validate the documented JSON schema; throws LoadError with
// field-level diagnostics.
MaassFormData ingest_maass(const std::string& path);
MaassFormData ingest_maass_json(const std::string& json_text);

struct EvalResult {
    double value = 0.0;
    double tail_bound = 0.0;
};

// phi(x + iy) as the truncated sum over the stored coefficients:
//   sum_n a_n sqrt(y) K_{iR}(2 pi n y) * {2 cos / 2i sin}(2 pi n x).
// Throws a truncation AccuracyError if the stored N_max cannot push the
// tail below `tol` at this height.
EvalResult eval_maass(const MaassFormData& d, double x, double y,
                      double tol = 1e-9);

struct EisResult {
    Complex value{0.0};
    double tail_bound = 0.0;
};

// E(z, s) = (1/2) sum over coprime (c,d) with c^2 + d^2 <= M^2 of
// y^s / |cz + d|^{2s}, plus an integral-comparison tail bound.
EisResult eisenstein_direct(Complex z, Complex s, int M);

struct SpectralSideValue {
    double s = 0.0;
    double dirichlet_value = 0.0;        // D(s) = sum |a_n|^2 n^{-s}
    double unfolded_value = 0.0;         // Parseval/moment form
    double pairing_value = 0.0;          // fundamental-domain pairing
    double ratio = 0.0;                  // pairing / unfolded
    double rel_discrepancy = 0.0;        // |ratio - 1|
    double pairing_tail = 0.0;
    double moment_value = 0.0;           // int |W|^2 y^{s-1} d*y at n = 1
};

// Unfolding identity at real s > 1.3: the fundamental-domain pairing
// int_F |phi|^2 E(z, s) dmu against the unfolded Parseval form
// sum_n |a_n|^2 int |W_n|^2 y^{s-1} d*y  =  2 D(s) * (n=1 moment).
SpectralSideValue unfold_check(const MaassFormData& d, double s,
                               const QuadratureSpec& spec = {});

// Truncated Dirichlet series with a tail bound from the measured
// mean-square growth.
EvalResult rs_dirichlet(const MaassFormData& d, double s);

// Automorphy certificate: max over sample points of
// |phi(z) - phi(-1/z)| / sup-scale.
double automorphy_residual(const MaassFormData& d,
                           const std::vector<Complex>& points);

struct SphericalCoefficient {
    Complex b_n{0.0};
    double r = 0.0;
    Complex P_value{0.0};
};

// b_n around z0: circle average of phi against e^{-i n theta} on
// z(theta) = h k_theta a_r i, divided by P_{tau,n}(r).  The matrix angle
// theta traverses the geodesic circle twice over [0, 2pi); odd harmonics
// vanish identically.
SphericalCoefficient spherical_extract(const MaassFormData& d, Complex z0,
                                       int n, double r, int quad_points = 512);

// Partial sums sum_{0<|n|<=T} |a_n|^2 with a fitted growth exponent.
BoundFitReport mean_square_report(const MaassFormData& d,
                                  const std::vector<double>& T_list);

}  // namespace pgl2num
