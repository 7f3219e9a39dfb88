#include "pgl2num/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "pgl2num/parallel.hpp"
#include "pgl2num/trilinear.hpp"

namespace pgl2num {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckRow row(std::string id,
             std::vector<std::pair<std::string, std::string>> params,
             double lhs, double rhs, bool verdict, double tail = 0.0) {
    CheckRow r;
    r.check_id = std::move(id);
    r.params = std::move(params);
    r.value_lhs = lhs;
    r.value_rhs = rhs;
    r.rel_discrepancy = rhs != 0.0 ? std::abs(lhs / rhs - 1.0) : std::abs(lhs);
    r.tail_bound = tail;
    r.verdict = verdict;
    return r;
}

std::string fmt(double v) { return format_double(v); }

// Measured envelope caps, frozen from the development calibration runs of
// this suite; the verdicts below compare freshly measured ratios against
// these values.
constexpr double kLemma1InnerCap = 9.0;    // |w^flat| N^{1/2} / T
constexpr double kLemma2InnerCap = 2.0;    // |u^sharp| envelope ratio
constexpr double kLemma3Region1Cap = 7.0;  // |psi^flat| (1+|xi|)^{1/2}

}  // namespace

SuiteResult verify_lemma1(double N, double T, const std::shared_ptr<Bump>& psi,
                          const VerifyOptions& opt) {
    auto t0 = Clock::now();
    SuiteResult out;
    out.name = "lemma1 N=" + fmt(N);
    TensorVector w = w_NT(N, T, psi);

    // (1) trace bound |int w(t,t) dt| <= c T
    double tr = std::abs(trace(w));
    double trace_c = tr / T;
    out.rows.push_back(row("lemma1.trace", {{"N", fmt(N)}, {"T", fmt(T)}},
                           tr, 2.0 * T * (*psi)(0.0) * psi->fourier(0.0),
                           trace_c <= (*psi)(0.0) * psi->fourier(0.0)));

    // (2)+(3) antidiagonal weight scan
    bool nonneg = true, window = true;
    double kmin = std::floor(N - 4 * T), kmax = std::ceil(N + 4 * T);
    int steps = 81;
    std::vector<double> wh(steps);
    parallel_for(steps, opt.jobs, [&](std::size_t i) {
        double k = kmin + (kmax - kmin) * static_cast<double>(i) / (steps - 1);
        wh[i] = weight_hat(w, k).real();
    });
    double floor_neg = 0.0, window_min = 1e300;
    for (int i = 0; i < steps; ++i) {
        double k = kmin + (kmax - kmin) * static_cast<double>(i) / (steps - 1);
        floor_neg = std::min(floor_neg, wh[i]);
        if (std::abs(k - N) <= T) window_min = std::min(window_min, wh[i]);
    }
    nonneg = floor_neg >= -1e-8;
    window = window_min >= 1.0;
    out.rows.push_back(row("lemma1.weight_nonneg", {{"N", fmt(N)}, {"T", fmt(T)}},
                           floor_neg, 0.0, nonneg));
    out.rows.push_back(row("lemma1.weight_window", {{"N", fmt(N)}, {"T", fmt(T)}},
                           window_min, 1.0, window));

    // (4) inner envelope, |s| <= N/T
    double nt = N / T;
    std::vector<double> inner_s{0.1 * nt, 0.35 * nt, 0.6 * nt, 0.85 * nt, nt};
    std::vector<double> inner_ratio(inner_s.size());
    parallel_for(inner_s.size(), opt.jobs, [&](std::size_t i) {
        Complex v = flat_transform(w, Complex(0.0, inner_s[i]));
        inner_ratio[i] = std::abs(v) * std::sqrt(N) / T;
    });
    double cap = 0.0;
    for (double rr : inner_ratio) cap = std::max(cap, rr);
    out.rows.push_back(row("lemma1.inner_envelope",
                           {{"N", fmt(N)}, {"T", fmt(T)}}, cap, kLemma1InnerCap,
                           cap <= kLemma1InnerCap));

    // (5) outer decay: scan i[0, 6 N/T], fit on sigma >= 2.2 N/T
    BoundFitReport rep;
    rep.check_id = "lemma1.outer N=" + fmt(N);
    std::vector<double> outer_s;
    for (double f : {1.3, 1.7, 2.2, 2.8, 3.6, 4.6, 6.0}) outer_s.push_back(f * nt);
    rep.points.resize(outer_s.size());
    parallel_for(outer_s.size(), opt.jobs, [&](std::size_t i) {
        FitPoint p;
        p.param = outer_s[i];
        try {
            p.value = std::abs(flat_transform(w, Complex(0.0, outer_s[i])));
        } catch (const AccuracyError& e) {
            p.ok = false;
            p.note = e.what();
        }
        rep.points[i] = p;
    });
    // fit on the genuinely post-transition points
    BoundFitReport fitrep = rep;
    fitrep.points.clear();
    for (const auto& p : rep.points)
        if (p.param >= 2.15 * nt) fitrep.points.push_back(p);
    fitrep.finalize(-3.0, opt.slack, false);
    fitrep.check_id = rep.check_id;
    out.rows.push_back(row("lemma1.outer_slope", {{"N", fmt(N)}, {"T", fmt(T)}},
                           fitrep.fitted_slope, -3.0 + opt.slack,
                           fitrep.fitted_slope <= -3.0 + opt.slack));
    out.fits.push_back(fitrep);

    out.pass = true;
    for (const auto& r : out.rows) out.pass = out.pass && r.verdict;
    out.runtime_seconds = seconds_since(t0);
    return out;
}

SuiteResult verify_lemma3(const std::shared_ptr<Bump>& psi,
                          const VerifyOptions& opt) {
    auto t0 = Clock::now();
    SuiteResult out;
    out.name = "lemma3";
    auto psi_fn = [psi](double t) { return Complex((*psi)(t), 0.0); };

    const std::vector<double> xi_grid{0.5, 1, 2, 4, 8, 12, 20, 30, 45, 70, 100, 140};
    const std::vector<double> s_grid{0.5, 1, 2, 4, 8, 12, 20, 30, 45, 70, 100, 140};

    // full 12x12 measurement grid
    std::vector<std::vector<double>> val(xi_grid.size(),
                                         std::vector<double>(s_grid.size(), 0.0));
    parallel_for(xi_grid.size() * s_grid.size(), opt.jobs, [&](std::size_t idx) {
        std::size_t i = idx / s_grid.size(), j = idx % s_grid.size();
        val[i][j] =
            std::abs(psi_flat(psi_fn, xi_grid[i], Complex(0.0, s_grid[j])));
    });

    // Region 1 (|s| <= 2 xi): column maxima decay like (1+xi)^{-1/2}
    BoundFitReport r1;
    r1.check_id = "lemma3.region1";
    double c1max = 0.0;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        double m = 0.0;
        for (std::size_t j = 0; j < s_grid.size(); ++j)
            if (s_grid[j] <= 2.0 * xi_grid[i]) m = std::max(m, val[i][j]);
        if (m > 0.0) r1.points.push_back({1.0 + xi_grid[i], m, true, ""});
        c1max = std::max(c1max, m * std::sqrt(1.0 + xi_grid[i]));
    }
    r1.finalize(-0.5, opt.slack, true);
    out.fits.push_back(r1);
    out.rows.push_back(row("lemma3.region1_slope", {}, r1.fitted_slope,
                           -0.5 + opt.slack, r1.fitted_slope <= -0.5 + opt.slack));
    out.rows.push_back(row("lemma3.region1_constant", {}, c1max,
                           kLemma3Region1Cap, c1max <= kLemma3Region1Cap));

    // Region 2 (|s| >= 2 xi): per low-xi column, decay (1+|s|)^{-3}
    for (double xi : {0.5, 1.0, 2.0}) {
        std::size_t i = 0;
        while (xi_grid[i] != xi) ++i;
        BoundFitReport r2;
        r2.check_id = "lemma3.region2 xi=" + fmt(xi);
        for (std::size_t j = 0; j < s_grid.size(); ++j)
            if (s_grid[j] >= 2.0 * xi)
                r2.points.push_back({1.0 + s_grid[j], val[i][j], true, ""});
        r2.finalize(-3.0, opt.slack, true);
        out.fits.push_back(r2);
        out.rows.push_back(row("lemma3.region2_slope", {{"xi", fmt(xi)}},
                               r2.fitted_slope, -3.0 + opt.slack,
                               r2.fitted_slope <= -3.0 + opt.slack));
    }
    out.pass = true;
    for (const auto& r : out.rows) out.pass = out.pass && r.verdict;
    out.runtime_seconds = seconds_since(t0);
    return out;
}

SuiteResult verify_lemma2(int N, double T, Complex tau,
                          const VerifyOptions& opt) {
    auto t0 = Clock::now();
    SuiteResult out;
    out.name = "lemma2 N=" + fmt(N);
    UNT u = u_NT(N, T);

    // (1) |u(0)| <= alpha T; the construction gives |u(0)| = kappa T
    // ||psi_base||^2 exactly, so the measured alpha must match it.
    double u0 = std::abs(u.fn.eval(0.0));
    QuadratureSpec qs;
    qs.rel_tol = 1e-11;
    auto f2 = [](double t) {
        double b = smooth_bump(t, 0.2);
        return Complex(b * b, 0.0);
    };
    double norm2 = integrate_1d(f2, -0.2, 0.2, qs).value.real();
    double alpha_cap = u.calibration * norm2;
    out.rows.push_back(row("lemma2.u0", {{"N", fmt(N)}, {"T", fmt(T)}}, u0,
                           alpha_cap * T, u0 <= alpha_cap * T * 1.000001));

    // (2)+(3) Fourier window scan over n in [N-4T, N+4T]
    int nlo = static_cast<int>(std::floor(N - 4 * T));
    int nhi = static_cast<int>(std::ceil(N + 4 * T));
    std::vector<int> ns;
    for (int n = nlo; n <= nhi; n += std::max(1, (nhi - nlo) / 120)) ns.push_back(n);
    std::vector<double> uh(ns.size());
    parallel_for(ns.size(), opt.jobs, [&](std::size_t i) {
        uh[i] = circle_fourier(u.fn, ns[i]).real();
    });
    double neg_floor = 0.0, win_min = 1e300;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        neg_floor = std::min(neg_floor, uh[i]);
        if (std::abs(ns[i] - N) <= T) win_min = std::min(win_min, uh[i]);
    }
    out.rows.push_back(row("lemma2.weight_nonneg", {{"N", fmt(N)}, {"T", fmt(T)}},
                           neg_floor, 0.0, neg_floor >= -1e-8));
    out.rows.push_back(row("lemma2.weight_window", {{"N", fmt(N)}, {"T", fmt(T)}},
                           win_min, 1.0, win_min >= 1.0));

    // (4) inner envelope and (5) outer decay of u^sharp
    double nt = static_cast<double>(N) / T;
    std::vector<double> inner_l{1.0, 0.5 * nt, 0.75 * nt, nt};
    std::vector<double> inner_ratio(inner_l.size());
    parallel_for(inner_l.size(), opt.jobs, [&](std::size_t i) {
        double li = inner_l[i];
        Complex v = sharp_transform(u.fn, tau, Complex(0.0, li));
        double env = T / std::sqrt(static_cast<double>(N) * (1.0 + li)) +
                     T * std::pow(1.0 + li, -2.5);
        inner_ratio[i] = std::abs(v) / env;
    });
    double icap = 0.0;
    for (double rr : inner_ratio) icap = std::max(icap, rr);
    out.rows.push_back(row("lemma2.inner_envelope",
                           {{"N", fmt(N)}, {"T", fmt(T)}}, icap, kLemma2InnerCap,
                           icap <= kLemma2InnerCap));

    BoundFitReport rep;
    rep.check_id = "lemma2.outer N=" + fmt(N);
    std::vector<double> outer_l;
    for (double f : {1.6, 2.4, 3.6, 5.4, 8.0, 12.0, 18.0}) outer_l.push_back(f * nt);
    rep.points.resize(outer_l.size());
    parallel_for(outer_l.size(), opt.jobs, [&](std::size_t i) {
        FitPoint p;
        p.param = 1.0 + outer_l[i];
        try {
            p.value = std::abs(sharp_transform(u.fn, tau, Complex(0.0, outer_l[i])));
        } catch (const AccuracyError& e) {
            p.ok = false;
            p.note = e.what();
        }
        rep.points[i] = p;
    });
    rep.finalize(-2.5, opt.slack, true);
    out.fits.push_back(rep);
    out.rows.push_back(row("lemma2.outer_slope", {{"N", fmt(N)}, {"T", fmt(T)}},
                           rep.fitted_slope, -2.5 + opt.slack,
                           rep.fitted_slope <= -2.5 + opt.slack));

    // direct vs asymptotic sharp transform above the crossover; measured on
    // the auxiliary window u_{N', T} with N' = 80 T so the crossover lies in
    // its inner regime, where the main term dominates the kernel.
    int Naux = static_cast<int>(std::lround(80.0 * T));
    UNT uaux = u_NT(Naux, T);
    std::vector<double> cross_l{44.0, 60.0, 78.0};
    double worst = 0.0;
    std::vector<double> dvals(cross_l.size()), avals(cross_l.size());
    parallel_for(cross_l.size(), opt.jobs, [&](std::size_t i) {
        Complex dv = sharp_transform(uaux.fn, tau, Complex(0.0, cross_l[i]),
                                     {}, SharpMode::Direct);
        Complex av = sharp_transform(uaux.fn, tau, Complex(0.0, cross_l[i]),
                                     {}, SharpMode::Asymptotic);
        dvals[i] = std::abs(dv);
        avals[i] = std::abs(dv - av) / std::abs(dv);
    });
    for (std::size_t i = 0; i < cross_l.size(); ++i) {
        worst = std::max(worst, avals[i]);
        out.rows.push_back(row("lemma2.direct_vs_asymptotic",
                               {{"N", fmt(Naux)},
                                {"T", fmt(T)},
                                {"lambda", fmt(cross_l[i])}},
                               avals[i], 1e-2, avals[i] <= 1e-2));
    }

    out.pass = true;
    for (const auto& r : out.rows) out.pass = out.pass && r.verdict;
    out.runtime_seconds = seconds_since(t0);
    return out;
}

SuiteResult verify_claim(Complex tau, const VerifyOptions& opt) {
    auto t0 = Clock::now();
    SuiteResult out;
    out.name = "claim";
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    spec.abs_tol = 1e-13;
    spec.max_subdivisions = 8000;

    std::vector<double> c_grid{0.4, 0.7, 1.1};
    std::vector<double> l_grid{20, 40, 80, 160};
    auto reps = claim_remainder_scan(tau, c_grid, l_grid, spec);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        out.rows.push_back(row("claim.remainder_slope",
                               {{"c", fmt(c_grid[i])}}, reps[i].fitted_slope,
                               -2.3, reps[i].pass));
        out.fits.push_back(reps[i]);
    }

    // Constants: engine plug-in vs least-squares fit against the direct
    // kernel at two unrelated large-|lambda| fit points.
    MainTermConstants plug = main_term_constants(tau, +1);
    auto fit_at = [&](double lam_im) {
        std::vector<double> cs{0.45, 0.62, 0.85, 1.03, 1.22};
        Complex lambda(0.0, lam_im);
        // unknowns (A, B', C') with m = al^{-1/2}[A + B'/al + C' cos^2/al]
        // least squares over complex samples: normal equations 3x3
        Complex M[3][3] = {};
        Complex b[3] = {};
        for (double c : cs) {
            Complex K = k_big_lambda_tau(tau, lambda, c, spec);
            double al = std::abs(lambda);
            Complex es = std::exp(lambda * std::log(std::abs(std::sin(c))));
            Complex ec = std::exp(lambda * std::log(std::abs(std::cos(c))));
            // basis functions multiplying A, B, C
            Complex phiA = std::pow(al, -0.5) * (es + ec);
            Complex phiB = std::pow(al, -1.5) * (es + ec);
            Complex phiC = std::pow(al, -1.5) *
                           (std::cos(c) * std::cos(c) * es +
                            std::sin(c) * std::sin(c) * ec);
            Complex phs[3] = {phiA, phiB, phiC};
            for (int r2 = 0; r2 < 3; ++r2) {
                for (int cc2 = 0; cc2 < 3; ++cc2)
                    M[r2][cc2] += std::conj(phs[r2]) * phs[cc2];
                b[r2] += std::conj(phs[r2]) * K;
            }
        }
        // 3x3 Gaussian elimination
        for (int i = 0; i < 3; ++i) {
            int p = i;
            for (int r2 = i + 1; r2 < 3; ++r2)
                if (std::abs(M[r2][i]) > std::abs(M[p][i])) p = r2;
            std::swap(M[i], M[p]);
            std::swap(b[i], b[p]);
            for (int r2 = i + 1; r2 < 3; ++r2) {
                Complex f = M[r2][i] / M[i][i];
                for (int cc2 = i; cc2 < 3; ++cc2) M[r2][cc2] -= f * M[i][cc2];
                b[r2] -= f * b[i];
            }
        }
        Complex sol[3];
        for (int i = 2; i >= 0; --i) {
            Complex s = b[i];
            for (int j = i + 1; j < 3; ++j) s -= M[i][j] * sol[j];
            sol[i] = s / M[i][i];
        }
        return MainTermConstants{sol[0], sol[1], sol[2]};
    };
    MainTermConstants f1 = fit_at(240.0), f2 = fit_at(360.0);
    auto rel = [](Complex a, Complex b2) {
        return std::abs(a - b2) / std::max(std::abs(a), std::abs(b2));
    };
    out.rows.push_back(row("claim.A_plugin_vs_fit", {}, rel(plug.A, f1.A), 1e-3,
                           rel(plug.A, f1.A) <= 1e-3));
    out.rows.push_back(row("claim.B_plugin_vs_fit", {}, rel(plug.B, f1.B), 1e-3,
                           rel(plug.B, f1.B) <= 1e-3));
    out.rows.push_back(row("claim.C_plugin_vs_fit", {}, rel(plug.C, f1.C), 1e-3,
                           rel(plug.C, f1.C) <= 1e-3));
    out.rows.push_back(row("claim.fit_stability", {},
                           std::max({rel(f1.A, f2.A), rel(f1.B, f2.B),
                                     rel(f1.C, f2.C)}),
                           1e-3,
                           std::max({rel(f1.A, f2.A), rel(f1.B, f2.B),
                                     rel(f1.C, f2.C)}) <= 1e-3));

    out.pass = true;
    for (const auto& r : out.rows) out.pass = out.pass && r.verdict;
    out.runtime_seconds = seconds_since(t0);
    return out;
}

SuiteResult verify_unfold(const MaassFormData& data,
                          const std::vector<double>& s_values,
                          const VerifyOptions& opt) {
    auto t0 = Clock::now();
    SuiteResult out;
    out.name = "unfold";

    std::vector<SpectralSideValue> vals(s_values.size());
    parallel_for(s_values.size(), opt.jobs, [&](std::size_t i) {
        vals[i] = unfold_check(data, s_values[i]);
    });
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        const auto& v = vals[i];
        out.rows.push_back(row("unfold.ratio", {{"s", fmt(v.s)}},
                               v.pairing_value, v.unfolded_value,
                               v.rel_discrepancy <= 1e-2, v.pairing_tail));
    }

    // automorphy certificate and scrambled negative control
    std::vector<Complex> pts{{0.2, 1.1}, {-0.31, 0.93}, {0.07, 1.4},
                             {0.43, 1.02}, {-0.11, 1.22}};
    double genuine = automorphy_residual(data, pts);
    out.rows.push_back(
        row("unfold.automorphy", {}, genuine, 1e-3, genuine <= 1e-3));

    MaassFormData scrambled = data;
    std::mt19937_64 rng(opt.seed);
    std::shuffle(scrambled.coefficients.begin() + 1,
                 scrambled.coefficients.end(), rng);
    double control = automorphy_residual(scrambled, pts);
    out.rows.push_back(row("unfold.negative_control", {}, control, 1e-2,
                           control >= 10.0 * 1e-3));

    out.pass = true;
    for (const auto& r : out.rows) out.pass = out.pass && r.verdict;
    out.runtime_seconds = seconds_since(t0);
    return out;
}

SuiteResult verify_spherical(const MaassFormData& data, Complex z0,
                             const std::vector<int>& harmonics,
                             const std::vector<double>& radii,
                             const VerifyOptions& opt) {
    auto t0 = Clock::now();
    SuiteResult out;
    out.name = "spherical";
    for (int n : harmonics) {
        std::vector<SphericalCoefficient> bs(radii.size());
        parallel_for(radii.size(), opt.jobs, [&](std::size_t i) {
            bs[i] = spherical_extract(data, z0, n, radii[i]);
        });
        double scale = 0.0;
        for (const auto& b : bs) scale = std::max(scale, std::abs(b.b_n));
        for (std::size_t i = 1; i < radii.size(); ++i) {
            double d = std::abs(bs[i].b_n - bs[0].b_n) / scale;
            out.rows.push_back(row("spherical.r_stability",
                                   {{"n", fmt(n)},
                                    {"r1", fmt(radii[0])},
                                    {"r2", fmt(radii[i])}},
                                   d, 1e-3, d <= 1e-3));
        }
    }
    // odd harmonics vanish: measure the raw circle average against the even
    // scale (P_{tau,n} is undefined for odd n, so compare averages directly)
    double pre = std::exp(M_PI * data.R / 2.0);
    double even_scale = 0.0;
    {
        auto b0 = spherical_extract(data, z0, 0, radii[0]);
        even_scale = std::abs(b0.b_n * b0.P_value);
    }
    for (int n : {1, 3}) {
        GroupElement h = GroupElement::unipotent_upper(z0.real()) *
                         GroupElement::diagonal(std::sqrt(z0.imag()));
        GroupElement ar = GroupElement::diagonal(std::exp(radii[0] / 2.0));
        Complex acc{0.0};
        const int Q = 512;
        for (int j = 0; j < Q; ++j) {
            double th = 2.0 * M_PI * j / Q;
            GroupElement g = h * GroupElement::rotation(th) * ar;
            Complex z = (g.a * Complex(0, 1) + g.b) / (g.c * Complex(0, 1) + g.d);
            acc += pre * eval_maass(data, z.real(), z.imag(), 1e-8).value *
                   Complex(std::cos(n * th), -std::sin(n * th));
        }
        acc /= static_cast<double>(Q);
        double ratio = std::abs(acc) / even_scale;
        out.rows.push_back(row("spherical.odd_vanishing", {{"n", fmt(n)}},
                               ratio, 1e-6, ratio <= 1e-6));
    }
    out.pass = true;
    for (const auto& r : out.rows) out.pass = out.pass && r.verdict;
    out.runtime_seconds = seconds_since(t0);
    return out;
}

}  // namespace pgl2num
