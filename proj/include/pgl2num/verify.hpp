// Lemma- and Claim-level verification suites shared by the CLI and the
// acceptance tests.  Each verifier measures, fits, and returns verdict rows
// plus fit reports; emission to CSV/SVG is the caller's concern.
#pragma once

#include <memory>

#include "pgl2num/asymptotics.hpp"
#include "pgl2num/automorphic.hpp"
#include "pgl2num/report.hpp"
#include "pgl2num/test_vectors.hpp"

namespace pgl2num {

struct VerifyOptions {
    int jobs = 2;
    double slack = 0.2;
    unsigned long long seed = 12345;
    double tol_scale = 1.0;   // loosens quadrature tolerances when > 1
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::vector<CheckRow> rows;
    std::vector<BoundFitReport> fits;
    double runtime_seconds = 0.0;
};

// Lemma-1 suite for one (N, T): trace bound, weight positivity and window,
// inner-regime envelope of |w^flat|, outer-regime decay slope.
SuiteResult verify_lemma1(double N, double T, const std::shared_ptr<Bump>& psi,
                          const VerifyOptions& opt);

// Lemma-3 suite: region-partitioned bounds for psi^flat on a 12x12 grid.
SuiteResult verify_lemma3(const std::shared_ptr<Bump>& psi,
                          const VerifyOptions& opt);

// Lemma-2 suite for one (N, T) at fixed tau: window properties of u_{N,T},
// inner envelope and outer decay of u^sharp, and direct-vs-asymptotic
// agreement above the crossover (measured on an auxiliary window whose
// inner regime contains the crossover).
SuiteResult verify_lemma2(int N, double T, Complex tau,
                          const VerifyOptions& opt);

// Claim suite: remainder decay scan plus the two-route determination of
// the main-term constants (engine plug-in vs least-squares against direct
// kernel quadrature at two large |lambda| fit points).
SuiteResult verify_claim(Complex tau, const VerifyOptions& opt);

// Unfolding suite on ingested data: ratio checks at the given s values and
// the scrambled-coefficient negative control.
SuiteResult verify_unfold(const MaassFormData& data,
                          const std::vector<double>& s_values,
                          const VerifyOptions& opt);

// Spherical-extraction stability suite.
SuiteResult verify_spherical(const MaassFormData& data, Complex z0,
                             const std::vector<int>& harmonics,
                             const std::vector<double>& radii,
                             const VerifyOptions& opt);

}  // namespace pgl2num
