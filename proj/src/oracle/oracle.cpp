#include "oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dissipair/ck.hpp"

namespace dissipair::oracle {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration
// on the Legendre recurrence.
struct GLRule {
    std::vector<double> nodes, weights;

    explicit GLRule(int n) : nodes(n), weights(n) {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::abs(step) < 1e-16) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

Cplx apply_rule(const GLRule& rule, const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Cplx sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

Cplx adapt(const GLRule& lo_rule, const GLRule& hi_rule, const Integrand& f, double a, double b,
           double tol, int depth) {
    const Cplx coarse = apply_rule(lo_rule, f, a, b);
    const Cplx fine = apply_rule(hi_rule, f, a, b);
    if (std::abs(fine - coarse) <= tol) return fine;
    if (depth >= 48)
        throw NoConvergence("adaptive_quadrature: depth limit reached");
    const double mid = 0.5 * (a + b);
    return adapt(lo_rule, hi_rule, f, a, mid, 0.5 * tol, depth + 1) +
           adapt(lo_rule, hi_rule, f, mid, b, 0.5 * tol, depth + 1);
}

Cplx integrate_finite(const Integrand& f, double lo, double hi, double tol) {
    static const GLRule rule10(10), rule21(21);
    return adapt(rule10, rule21, f, lo, hi, tol, 0);
}

}  // namespace

Cplx adaptive_quadrature(const Integrand& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw DomainError("adaptive_quadrature: lo >= hi");
    if (tol < 1e-15) throw DomainError("adaptive_quadrature: tolerance too tight");

    const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) return integrate_finite(f, lo, hi, tol);

    // Double-exponential substitutions onto a finite u-interval.
    constexpr double kHalfPi = M_PI / 2.0;
    constexpr double u_cut = 3.8;
    if (lo_inf && hi_inf) {
        const Integrand g = [&f](double u) {
            const double sh = kHalfPi * std::sinh(u);
            const double x = std::sinh(sh);
            const double jac = kHalfPi * std::cosh(u) * std::cosh(sh);
            const Cplx v = f(x);
            return v == Cplx(0.0) ? Cplx(0.0) : v * jac;
        };
        return integrate_finite(g, -u_cut, u_cut, tol);
    }
    if (!lo_inf && hi_inf) {
        const Integrand g = [&f, lo](double u) {
            const double x = lo + std::exp(kHalfPi * std::sinh(u));
            const double jac = kHalfPi * std::cosh(u) * (x - lo);
            const Cplx v = f(x);
            return v == Cplx(0.0) ? Cplx(0.0) : v * jac;
        };
        return integrate_finite(g, -u_cut, u_cut, tol);
    }
    // (-inf, hi]: mirror
    const Integrand g = [&f, hi](double u) {
        const double x = hi - std::exp(kHalfPi * std::sinh(u));
        const double jac = kHalfPi * std::cosh(u) * (hi - x);
        const Cplx v = f(x);
        return v == Cplx(0.0) ? Cplx(0.0) : v * jac;
    };
    return integrate_finite(g, -u_cut, u_cut, tol);
}

Cplx adaptive_quadrature_2d(const std::function<Cplx(double, double)>& f, double lo1, double hi1,
                            double lo2, double hi2, double tol) {
    const Integrand outer = [&](double x1) {
        return adaptive_quadrature([&, x1](double x2) { return f(x1, x2); }, lo2, hi2,
                                   0.1 * tol);
    };
    return adaptive_quadrature(outer, lo1, hi1, tol);
}

double Grid1D::norm() const {
    double s = 0.0;
    for (const Cplx v : values) s += std::norm(v);
    return s * dx();
}

Grid1D make_grid(const std::function<Cplx(double)>& f, double x_min, double x_max,
                 std::size_t n) {
    if (n < 256 || (n & (n - 1)) != 0)
        throw DomainError("make_grid: n must be a power of two, n >= 256");
    Grid1D g{x_min, x_max, std::vector<Cplx>(n)};
    for (std::size_t j = 0; j < n; ++j) g.values[j] = f(g.x(j));
    return g;
}

namespace {

void check_boundary_decay(const Grid1D& g, const char* where) {
    double peak = 0.0;
    for (const Cplx v : g.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) throw AliasError(std::string(where) + ": empty state");
    const std::size_t n = g.values.size();
    const std::size_t margin = 4;
    double edge = 0.0;
    for (std::size_t j = 0; j < margin; ++j) {
        edge = std::max(edge, std::abs(g.values[j]));
        edge = std::max(edge, std::abs(g.values[n - 1 - j]));
    }
    if (edge > 1e-12 * peak)
        throw AliasError(std::string(where) + ": state reaches the grid boundary");
}

}  // namespace

Grid1D grid_evolve_ck(const Grid1D& initial, double t_from, double t_to, const Environment& env) {
    check_boundary_decay(initial, "grid_evolve_ck");
    const double dtau = rescaled_time(t_to, env) - rescaled_time(t_from, env);
    Grid1D out = initial;
    if (dtau == 0.0) return out;

    const std::size_t n = out.values.size();
    const double L = out.x_max - out.x_min;
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(out.values.data());
    fftw_plan fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    for (std::size_t j = 0; j < n; ++j) {
        const double jj = j <= n / 2 ? static_cast<double>(j)
                                     : static_cast<double>(j) - static_cast<double>(n);
        const double k = 2.0 * M_PI * jj / L;
        const double phase = -env.hbar * k * k * dtau / (2.0 * env.m);
        out.values[j] *= Cplx(std::cos(phase), std::sin(phase)) / static_cast<double>(n);
    }
    fftw_execute(bwd);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    check_boundary_decay(out, "grid_evolve_ck (output)");
    return out;
}

void apply_gaussian_aperture(Grid1D& grid, double X, double w) {
    for (std::size_t j = 0; j < grid.values.size(); ++j) {
        const double u = (grid.x(j) - X) / w;
        grid.values[j] *= std::exp(-0.5 * u * u);
    }
    const double n = grid.norm();
    if (n <= 0.0) throw DomainError("apply_gaussian_aperture: state annihilated");
    const double s = 1.0 / std::sqrt(n);
    for (Cplx& v : grid.values) v *= s;
}

MomentState cl_moment_ode(const GaussianPacket& packet, double t, const Environment& env,
                          double dt) {
    if (t < 0.0) throw DomainError("cl_moment_ode: t < 0");
    const double D = 2.0 * env.m * env.gamma * env.kBT;
    const double g = env.gamma, m = env.m;

    using State = std::array<double, 5>;  // x, p, sxx, sxp, spp
    const auto deriv = [&](const State& s) {
        return State{s[1] / m,
                     -2.0 * g * s[1],
                     2.0 * s[3] / m,
                     s[4] / m - 2.0 * g * s[3],
                     -4.0 * g * s[4] + 2.0 * D};
    };

    State s{packet.x0, packet.p0, packet.sigma0 * packet.sigma0, 0.0,
            env.hbar * env.hbar / (4.0 * packet.sigma0 * packet.sigma0)};
    const std::size_t nsteps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t / dt)));
    const double h = t / static_cast<double>(nsteps);
    for (std::size_t step = 0; step < nsteps; ++step) {
        const State k1 = deriv(s);
        State tmp;
        for (int i = 0; i < 5; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
        const State k2 = deriv(tmp);
        for (int i = 0; i < 5; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
        const State k3 = deriv(tmp);
        for (int i = 0; i < 5; ++i) tmp[i] = s[i] + h * k3[i];
        const State k4 = deriv(tmp);
        for (int i = 0; i < 5; ++i)
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return {s[0], s[1], s[2], s[3], s[4]};
}

}  // namespace dissipair::oracle
