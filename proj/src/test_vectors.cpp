#include "pgl2num/test_vectors.hpp"

#include <cmath>

namespace pgl2num {

double smooth_bump(double t, double radius) {
    double u = t / radius;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

namespace {

// cubic interpolation on a uniform grid (Catmull-Rom)
double grid_eval(const std::vector<double>& g, double step, double lo, double t) {
    double s = (t - lo) / step;
    long i = static_cast<long>(std::floor(s));
    if (i < 1) i = 1;
    if (i > static_cast<long>(g.size()) - 3) i = static_cast<long>(g.size()) - 3;
    double x = s - i;
    double p0 = g[i - 1], p1 = g[i], p2 = g[i + 1], p3 = g[i + 2];
    return p1 + 0.5 * x * (p2 - p0 +
           x * (2 * p0 - 5 * p1 + 4 * p2 - p3 + x * (3 * (p1 - p2) + p3 - p0)));
}

}  // namespace

Bump::Bump(const BumpSpec& spec) : radius_(spec.support_radius) {
    const double half = radius_ / 2.0;  // base chi lives on [-half, half]
    const int n = spec.grid_points;
    step_ = 2.0 * radius_ / (n - 1);

    // chi-hat(xi) = int chi cos(xi t) dt for the unit-amplitude base.
    QuadratureSpec qs;
    qs.rel_tol = 1e-12;
    qs.abs_tol = 1e-15;
    auto chihat = [&](double xi) {
        QuadratureSpec q = qs;
        if (xi != 0.0) q.oscillation_freqs.push_back(std::abs(xi));
        auto f = [&](double t) {
            return Complex(smooth_bump(t, half) * std::cos(xi * t), 0.0);
        };
        return integrate_1d(f, -half, half, q).value.real();
    };
    // calibrate: psi-hat = (amp * chi-hat)^2 must clear the bound with margin
    double worst = chihat(spec.fourier_bound_radius);
    worst = std::min(worst, chihat(0.7 * spec.fourier_bound_radius));
    worst = std::min(worst, chihat(0.0));
    if (worst <= 0.0)
        throw DomainError("Bump: base transform not positive on the window");
    amplitude_ = 1.1 * std::sqrt(spec.fourier_lower_bound) / worst;

    // tabulate psi = chi * chi' on [-radius, radius]
    grid_.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = -radius_ + i * step_;
        auto f = [&](double s) {
            return Complex(smooth_bump(s, half) * smooth_bump(s - t, half), 0.0);
        };
        double lo = std::max(-half, t - half), hi = std::min(half, t + half);
        double v = 0.0;
        if (hi > lo) {
            QuadratureSpec q;
            q.rel_tol = 1e-12;
            q.abs_tol = 1e-16;
            v = integrate_1d(f, lo, hi, q).value.real();
        }
        grid_[i] = amplitude_ * amplitude_ * v;
    }

    // verification scan of psi-hat on a 2001-point grid
    verified_min_ = 1e300;
    for (int i = 0; i <= 2000; ++i) {
        double xi = -spec.fourier_bound_radius +
                    2.0 * spec.fourier_bound_radius * i / 2000.0;
        double v = fourier(xi);
        verified_min_ = std::min(verified_min_, v);
    }
    if (verified_min_ < spec.fourier_lower_bound)
        throw DomainError("Bump: verified Fourier minimum " +
                          std::to_string(verified_min_) +
                          " falls short of the requested bound");
}

double Bump::operator()(double t) const {
    if (std::abs(t) >= radius_) return 0.0;
    return grid_eval(grid_, step_, -radius_, t);
}

double Bump::fourier(double xi) const {
    QuadratureSpec q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-14;
    if (xi != 0.0) q.oscillation_freqs.push_back(std::abs(xi));
    auto f = [&](double t) {
        return Complex((*this)(t) * std::cos(xi * t), 0.0);
    };
    return integrate_1d(f, -radius_, radius_, q).value.real();
}

TensorVector w_NT(double N, double T, const std::shared_ptr<Bump>& psi) {
    if (!(N >= T && T >= 1.0))
        throw DomainError("w_NT: N >= T >= 1 required");
    double R = psi->support_radius();
    TensorVector w;
    w.model = TensorModel::Plane;
    w.box_diff = R / T;
    w.box_sum = R;
    w.record = TensorRecord{N, T};
    w.eval = [N, T, psi](double x, double y) {
        double u = x - y;
        return Complex(T * (*psi)(T * u) * (*psi)(x + y), 0.0) *
               Complex(std::cos(N * u), std::sin(N * u));
    };
    return w;
}

UNT u_NT(int N, double T, double base_radius) {
    if (!(static_cast<double>(N) >= T && T >= 1.0))
        throw DomainError("u_NT: N >= T >= 1 required");
    if (base_radius > 0.2 + 1e-12)
        throw DomainError("u_NT: base support must stay within 0.2 of 0");

    // autocorrelation of the scaled base bump, tabulated once
    const double conv_radius = 2.0 * base_radius / T;
    const int n = 4097;
    double step = 2.0 * conv_radius / (n - 1);
    std::vector<double> grid(n);
    QuadratureSpec q;
    q.rel_tol = 1e-12;
    q.abs_tol = 1e-18;
    double half = base_radius / T;
    for (int i = 0; i < n; ++i) {
        double c = -conv_radius + i * step;
        double lo = std::max(-half, c - half), hi = std::min(half, c + half);
        grid[i] = 0.0;
        if (hi > lo) {
            auto f = [&](double d) {
                return Complex(smooth_bump(T * (c - d), base_radius) *
                                   smooth_bump(T * d, base_radius),
                               0.0);
            };
            grid[i] = integrate_1d(f, lo, hi, q).value.real();
        }
    }

    // calibration: u-hat(n) = kappa T^2 (1/2pi) |F[psi_T]|^2(n - N); the
    // base-profile transform at the window edge sets the needed scale.
    QuadratureSpec qf;
    qf.rel_tol = 1e-12;
    auto base_hat = [&](double xi) {
        QuadratureSpec qq = qf;
        if (xi != 0.0) qq.oscillation_freqs.push_back(std::abs(xi));
        auto f = [&](double t) {
            return Complex(smooth_bump(t, base_radius) * std::cos(xi * t), 0.0);
        };
        return integrate_1d(f, -base_radius, base_radius, qq).value.real();
    };
    double worst = std::min({base_hat(0.0), base_hat(0.7), base_hat(1.0)});
    if (worst <= 0.0) throw DomainError("u_NT: base transform not positive");
    // u-hat(n) = kappa |psi-hat_base((n-N)/T)|^2 / (2 pi)   (line-limit of the
    // tiny-support circle convolution); kappa clears 1 with 15% margin.
    double kappa = 1.15 * 2.0 * M_PI / (worst * worst);

    UNT out;
    out.calibration = kappa;
    out.support_radius = conv_radius;
    double Nf = N;
    out.fn.support_radius = conv_radius;
    out.fn.carrier_freq = Nf;
    out.fn.eval = [grid = std::move(grid), step, conv_radius, kappa, T,
                   Nf](double c) {
        // principal branch on (-pi, pi]
        double cc = std::remainder(c, 2.0 * M_PI);
        if (std::abs(cc) >= conv_radius) return Complex(0.0);
        double ac = grid_eval(grid, step, -conv_radius, cc);
        return kappa * T * T * ac * Complex(std::cos(Nf * cc), std::sin(Nf * cc));
    };
    return out;
}

std::function<double(double)> alpha_ZR(double Z, double R) {
    if (!(Z >= 1.0 && R >= 1.0))
        throw DomainError("alpha_ZR: Z >= 1 and R >= 1 required");
    auto sigma = [](double x) {
        // C-infinity step: 0 for x<=0, 1 for x>=1
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
        return a / (a + b);
    };
    return [Z, R, sigma](double t) {
        double u = t / R;
        double up = (u - (1.0 - 2.0 / Z)) * Z;        // 0 at left support edge
        double dn = ((1.0 + 2.0 / Z) - u) * Z;        // 0 at right support edge
        return sigma(up) * sigma(dn);
    };
}

}  // namespace pgl2num
