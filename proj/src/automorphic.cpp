#include "pgl2num/automorphic.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "pgl2num/special.hpp"

namespace pgl2num {

namespace {

// e^{pi R / 2} K_{iR}(x): the scaled Bessel kernel keeping Maass-form
// arithmetic at O(1) magnitudes.
double scaled_K(double R, double x) {
    if (R <= 5.0) return std::exp(M_PI * R / 2.0) * bessel_k_imag(R, x);
    if (x >= 1.6 * R) {
        double v = bessel_k_imag(R, x);
        return std::exp(M_PI * R / 2.0) * v;  // e^{piR/2 - x} scale, no overflow
    }
    // contour representation carries the e^{-pi R/2} prefactor explicitly;
    // recompute without it
    double xU = std::max(R + 52.0, 1.8 * R);
    double Ub = std::acosh(xU / x);
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 20000;
    spec.oscillation_freqs.push_back(R + x * std::cosh(Ub));
    auto axis = [R, x](double u) {
        double ph = R * u - x * std::sinh(u);
        return Complex(std::cos(ph), std::sin(ph));
    };
    Complex val = integrate_1d(axis, 0.0, Ub, spec).value;
    double xcU = x * std::cosh(Ub), xsU = x * std::sinh(Ub);
    double wstar = std::acos(std::min(1.0, R / xcU));
    auto ray = [=](double w) {
        double re_ph = R * Ub - xsU * std::cos(w);
        double im_ph = -R * w + xcU * std::sin(w);
        double mag = std::exp(-im_ph);
        return Complex(mag * std::sin(re_ph), -mag * std::cos(re_ph));
    };
    QuadratureSpec sray = spec;
    sray.oscillation_freqs = {R + xsU};
    sray.max_subdivisions = 4000;
    val += integrate_1d(ray, 0.0, wstar, sray).value;
    return val.real();
}

}  // namespace

MaassFormData ingest_maass_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw LoadError(std::string("maass data: invalid JSON: ") + e.what());
    }
    auto need = [&](const char* field) -> const nlohmann::json& {
        if (!j.contains(field))
            throw LoadError(std::string("maass data: missing field '") + field + "'");
        return j.at(field);
    };
    MaassFormData d;
    if (!need("format_version").is_number_integer() ||
        j["format_version"].get<int>() != 1)
        throw LoadError("maass data: format_version must be the integer 1");
    d.lattice = need("lattice").get<std::string>();
    if (d.lattice != "PSL2Z")
        throw LoadError("maass data: lattice must be \"PSL2Z\"");
    if (!need("R").is_number())
        throw LoadError("maass data: R must be a float");
    d.R = j["R"].get<double>();
    if (!(d.R > 0.0)) throw LoadError("maass data: R must be positive");
    std::string sym = need("symmetry").get<std::string>();
    if (sym != "even" && sym != "odd")
        throw LoadError("maass data: symmetry must be \"even\" or \"odd\"");
    d.even = sym == "even";
    d.normalization = need("normalization").get<std::string>();
    if (d.normalization != "hecke" && d.normalization != "l2")
        throw LoadError("maass data: normalization must be \"hecke\" or \"l2\"");
    const auto& co = need("coefficients");
    if (!co.is_array() || co.empty())
        throw LoadError("maass data: coefficients must be a non-empty array");
    for (const auto& v : co) {
        if (!v.is_number())
            throw LoadError("maass data: coefficients must be numbers");
        d.coefficients.push_back(v.get<double>());
    }
    d.provenance = need("provenance").get<std::string>();
    if (j.contains("mu")) {
        double mu = j["mu"].get<double>();
        if (std::abs(mu - d.mu()) > 1e-9 * std::max(1.0, d.mu()))
            throw LoadError("maass data: stored mu disagrees with 1/4 + R^2");
    }
    if (d.normalization == "hecke" && d.coefficients[0] == 0.0)
        throw LoadError("maass data: hecke normalization requires a_1 != 0");
    // mean-square growth constant (Hardy-Hecke shape), recorded
    double tau_abs = 2.0 * d.R;
    double worst = 0.0;
    double run = 0.0;
    for (int n = 1; n <= d.n_max(); ++n) {
        run += 2.0 * d.coefficients[n - 1] * d.coefficients[n - 1];
        worst = std::max(worst, run / std::max(static_cast<double>(n), 1.0 + tau_abs));
    }
    d.mean_square_constant = worst;
    return d;
}

MaassFormData ingest_maass(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("maass data: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ingest_maass_json(ss.str());
}

EvalResult eval_maass(const MaassFormData& d, double x, double y, double tol) {
    if (!(y > 0.0)) throw DomainError("eval_maass: y > 0 required");
    const double R = d.R;
    const int N = d.n_max();
    // scaled tail estimate: e^{piR/2} K_{iR}(t) <= c t^{-1/2} e^{piR/2 - t}
    // for t > R; the first omitted term controls the geometric tail.
    auto term_bound = [&](int n) {
        double t = 2.0 * M_PI * n * y;
        if (t <= R + 2.0) return 1e300;
        return 2.0 * std::exp(M_PI * R / 2.0 - t) / std::sqrt(t);
    };
    double coeff_scale = 0.0;
    for (double a : d.coefficients) coeff_scale = std::max(coeff_scale, std::abs(a));
    double tail = 2.0 * (coeff_scale + 1.0) * std::sqrt(y) * term_bound(N + 1);
    if (tail > tol) {
        int need = N + 1;
        while (2.0 * (coeff_scale + 1.0) * std::sqrt(y) * term_bound(need) > tol &&
               need < 100000)
            ++need;
        throw AccuracyError("eval_maass: stored N_max insufficient at this "
                            "height; need about " + std::to_string(need) +
                            " coefficients", Complex(0.0), tail);
    }
    double s = 0.0;
    double spre = std::exp(-M_PI * R / 2.0);  // undo the kernel scaling
    for (int n = 1; n <= N; ++n) {
        double t = 2.0 * M_PI * n * y;
        if (t > M_PI * R / 2.0 + 80.0 && t > R + 10.0) break;  // below 1e-30 scale
        double k = scaled_K(R, t);
        double osc = d.even ? 2.0 * std::cos(2.0 * M_PI * n * x)
                            : 2.0 * std::sin(2.0 * M_PI * n * x);
        s += d.coefficients[n - 1] * std::sqrt(y) * k * osc;
    }
    return {spre * s, tail};
}

EisResult eisenstein_direct(Complex z, Complex s, int M) {
    if (!(s.real() > 1.3))
        throw DomainError("eisenstein_direct: Re s > 1.3 required");
    if (M < 10) throw DomainError("eisenstein_direct: M >= 10 required");
    double x = z.real(), y = z.imag();
    if (!(y > 0.0)) throw DomainError("eisenstein_direct: upper half plane");
    Complex sum{0.0};
    const long M2 = static_cast<long>(M) * M;
    for (long c = 0; c <= M; ++c) {
        for (long dd = (c == 0 ? 1 : -M); dd <= M; ++dd) {
            if (c * c + dd * dd > M2 || (c == 0 && dd != 1)) continue;
            if (std::gcd(c, std::abs(dd)) != 1) continue;
            double q = std::norm(Complex(c * x + dd, c * y));
            // y^s / |cz+d|^{2s}; pair (c,d) ~ (-c,-d) counted once via c >= 0
            sum += std::exp(s * std::log(y) - s * std::log(q));
        }
    }
    // tail: sum over c^2+d^2 > M^2 of y^Re(s)/q(c,d)^Re(s) with
    // q >= lambda_min (c^2+d^2); integral comparison gives
    // pi y^sigma lambda_min^{-sigma} M^{2-2 sigma} / (sigma - 1).
    double sig = s.real();
    double zz = std::norm(z);
    double lmin = 0.5 * (zz + 1.0 - std::sqrt((zz - 1.0) * (zz - 1.0) + 4.0 * x * x));
    double tail = M_PI * std::pow(y, sig) * std::pow(lmin, -sig) *
                  std::pow(static_cast<double>(M), 2.0 - 2.0 * sig) / (sig - 1.0);
    return {sum, tail};
}

namespace {

// e^{pi R} int_0^inf K_{iR}(2 pi y)^2 y^{s-1} dy via the scaled kernel; the
// caller keeps the whole identity in the scaled convention so ratios stay
// well conditioned.  For s > 1.3 the piece below y = 1e-6 is under 1e-10
// relative and is dropped.
double scaled_whittaker_moment(double R, double s) {
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 12000;
    auto f = [&](double y) {
        double k = scaled_K(R, 2.0 * M_PI * y);
        return Complex(k * k * std::pow(y, s - 1.0), 0.0);
    };
    double yt = R / (2.0 * M_PI);
    double hi = yt + (R + 80.0) / (2.0 * M_PI);
    Complex v = integrate_1d(f, 1e-6, yt, spec).value +
                integrate_1d(f, yt, hi, spec).value;
    return v.real();
}

}  // namespace

SpectralSideValue unfold_check(const MaassFormData& d, double s,
                               const QuadratureSpec& spec_in) {
    if (!(s > 1.3)) throw DomainError("unfold_check: s > 1.3 required");
    SpectralSideValue out;
    out.s = s;
    const double R = d.R;

    // (iii) Dirichlet series
    out.dirichlet_value = rs_dirichlet(d, s).value;

    // (ii) unfolded Parseval form: 2 D(s) * moment, in the e^{pi R}-scaled
    // convention (both (i) and (ii) carry the same scaling, so the ratio is
    // scale-free).
    double moment = scaled_whittaker_moment(R, s);
    out.moment_value = moment;
    out.unfolded_value = 2.0 * out.dirichlet_value * moment;

    // (i) fundamental-domain pairing int_F |phi|^2 E(z,s) dmu with the
    // scaled phi~ = e^{pi R/2} phi, measure dx dy / y^2.  Outer integral in
    // y so the Bessel values at one height are shared across the x row;
    // coprime pairs for the Eisenstein sum are enumerated once.
    const int M = 220;
    QuadratureSpec spec = spec_in;
    if (spec.rel_tol <= 0.0 || spec.rel_tol >= 1.0) spec.rel_tol = 3e-6;
    double ytop = (R + 46.0) / (2.0 * M_PI);

    std::vector<std::pair<double, double>> pairs;  // (c, d) coprime, up to +-
    for (long c = 0; c <= M; ++c)
        for (long dd = (c == 0 ? 1 : -M); dd <= M; ++dd) {
            if (c * c + dd * dd > static_cast<long>(M) * M) continue;
            if (c == 0 && dd != 1) continue;
            if (std::gcd(c, std::abs(dd)) != 1) continue;
            pairs.emplace_back(static_cast<double>(c), static_cast<double>(dd));
        }

    auto row = [&](double y) {
        // Bessel column for this height
        std::vector<double> kn(d.n_max() + 1, 0.0);
        for (int n = 1; n <= d.n_max(); ++n) {
            double t = 2.0 * M_PI * n * y;
            if (t > M_PI * R / 2.0 + 80.0 && t > R + 10.0) break;
            kn[n] = scaled_K(R, t) * std::sqrt(y);
        }
        const double half = 0.5;
        double xcut = (y < 1.0) ? std::sqrt(1.0 - y * y) : 0.0;
        auto fx = [&](double x) {
            double sphi = 0.0;
            for (int n = 1; n <= d.n_max(); ++n) {
                if (kn[n] == 0.0) break;
                double osc = d.even ? 2.0 * std::cos(2.0 * M_PI * n * x)
                                    : 2.0 * std::sin(2.0 * M_PI * n * x);
                sphi += d.coefficients[n - 1] * kn[n] * osc;
            }
            Complex e{0.0};
            for (const auto& [c, dd] : pairs) {
                double q = (c * x + dd) * (c * x + dd) + c * c * y * y;
                e += std::exp(s * std::log(y) - s * std::log(q));
            }
            return sphi * sphi * e;
        };
        QuadratureSpec sxq;
        sxq.rel_tol = std::max(spec.rel_tol * 0.2, 1e-8);
        sxq.abs_tol = 1e-11;
        Complex v{0.0};
        if (xcut < half - 1e-14) {
            v = integrate_1d(fx, xcut, half, sxq).value +
                integrate_1d(fx, -half, -xcut, sxq).value;
        }
        return v / (y * y);
    };
    QuadratureSpec syq;
    syq.rel_tol = spec.rel_tol;
    syq.abs_tol = 1e-12;
    double ylow = std::sqrt(3.0) / 2.0;
    Complex pairing = integrate_1d(row, ylow, 1.0, syq).value +
                      integrate_1d(row, 1.0, ytop, syq).value;
    out.pairing_value = pairing.real();
    out.pairing_tail = eisenstein_direct(Complex(0.0, 1.0), Complex(s, 0.0), M).tail_bound;

    out.ratio = out.pairing_value / out.unfolded_value;
    out.rel_discrepancy = std::abs(out.ratio - 1.0);
    return out;
}

EvalResult rs_dirichlet(const MaassFormData& d, double s) {
    if (!(s > 1.3)) throw DomainError("rs_dirichlet: s > 1.3 required");
    double v = 0.0;
    for (int n = 1; n <= d.n_max(); ++n)
        v += d.coefficients[n - 1] * d.coefficients[n - 1] * std::pow(n, -s);
    // tail over n > N: mean-square growth sum_{n<=T} 2 a_n^2 <= C max{T,1+2R}
    // gives, by partial summation, tail <= C s N^{-s} max{N, 1+2R} / (s-1).
    double N = d.n_max();
    double tail = d.mean_square_constant * s *
                  std::pow(N, -s) * std::max(N, 1.0 + 2.0 * d.R) / (s - 1.0) / 2.0;
    return {v, tail};
}

double automorphy_residual(const MaassFormData& d,
                           const std::vector<Complex>& points) {
    // sup-scale of the scaled form over the sample points
    double scale = 0.0, worst = 0.0;
    double pre = std::exp(M_PI * d.R / 2.0);
    std::vector<double> v1(points.size()), v2(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        Complex z = points[i];
        Complex w = -1.0 / z;
        v1[i] = pre * eval_maass(d, z.real(), z.imag(), 1e-8).value;
        v2[i] = pre * eval_maass(d, w.real(), w.imag(), 1e-8).value;
        scale = std::max({scale, std::abs(v1[i]), std::abs(v2[i])});
    }
    if (scale == 0.0) return 1e300;
    for (size_t i = 0; i < points.size(); ++i)
        worst = std::max(worst, std::abs(v1[i] - v2[i]) / scale);
    return worst;
}

SphericalCoefficient spherical_extract(const MaassFormData& d, Complex z0,
                                       int n, double r, int quad_points) {
    if (n % 2 != 0) throw DomainError("spherical_extract: n must be even");
    if (!(r > 0.0)) throw DomainError("spherical_extract: r > 0 required");
    SpectralParam tau = d.tau();
    Complex P = spherical_P(tau, n, r);
    if (std::abs(P) < 1e-8)
        throw DomainError("spherical_extract: P_{tau,n}(r) below conditioning "
                          "floor; use a different radius or harmonic");

    // z(theta) = h k_theta a_r i with h = diag(sqrt(y0), 1/sqrt(y0)) * [1, x0; 0, 1]-ish;
    // explicit Moebius chain keeps the geometry readable.
    double x0 = z0.real(), y0 = z0.imag();
    auto moebius = [](const GroupElement& g, Complex z) {
        return (g.a * z + g.b) / (g.c * z + g.d);
    };
    GroupElement h = GroupElement::unipotent_upper(x0) *
                     GroupElement::diagonal(std::sqrt(y0));
    GroupElement ar = GroupElement::diagonal(std::exp(r / 2.0));

    // uniform trapezoid over the (periodic, smooth) circle average
    Complex acc{0.0};
    double pre = std::exp(M_PI * d.R / 2.0);
    for (int j = 0; j < quad_points; ++j) {
        double theta = 2.0 * M_PI * j / quad_points;
        GroupElement g = h * GroupElement::rotation(theta) * ar;
        Complex z = moebius(g, Complex(0.0, 1.0));
        double phi = pre * eval_maass(d, z.real(), z.imag(), 1e-8).value;
        acc += phi * Complex(std::cos(n * theta), -std::sin(n * theta));
    }
    acc /= static_cast<double>(quad_points);

    SphericalCoefficient out;
    out.r = r;
    out.P_value = P;
    out.b_n = acc / P;   // scaled by e^{pi R/2}; ratio tests are scale-free
    return out;
}

BoundFitReport mean_square_report(const MaassFormData& d,
                                  const std::vector<double>& T_list) {
    BoundFitReport rep;
    rep.check_id = "mean-square-growth";
    for (double T : T_list) {
        double sum = 0.0;
        for (int n = 1; n <= std::min<int>(d.n_max(), static_cast<int>(T)); ++n)
            sum += 2.0 * d.coefficients[n - 1] * d.coefficients[n - 1];
        rep.points.push_back({T, sum, true, ""});
    }
    rep.finalize(1.0, 0.1, false);
    rep.pass = rep.fitted_slope <= 1.1;
    return rep;
}

}  // namespace pgl2num
