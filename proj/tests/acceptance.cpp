// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "dissipair/ck.hpp"
#include "dissipair/cl.hpp"
#include "dissipair/pair.hpp"
#include "dissipair/two_slit.hpp"
#include "oracle/oracle.hpp"

using namespace dissipair;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Environment env_of(double gamma, double kBT = 0.0) {
    Environment env;
    env.gamma = gamma;
    env.kBT = kBT;
    return env;
}

// fig-1/2 packet pair
const GaussianPacket kA{0.0, 3.0, 1.0};
const GaussianPacket kB{0.0, 3.0, 0.9};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Cplx grid_inner(const oracle::Grid1D& f, const oracle::Grid1D& g) {
    Cplx acc = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j)
        acc += std::conj(f.values[j]) * g.values[j];
    return acc * f.dx();
}

// 1. overlap invariance: closed form < 1e-10, grid oracle < 1e-6
bool overlap_invariance(std::string& detail) {
    const Environment env = env_of(0.1);
    const Cplx initial = initial_overlap(kA, kB, env);

    double worst_closed = 0.0, worst_grid = 0.0;
    const auto sample_a = oracle::make_grid(
        [&](double x) { return wavefunction_at(kA, x, 0.0, env); }, -30.0, 60.0, 4096);
    const auto sample_b = oracle::make_grid(
        [&](double x) { return wavefunction_at(kB, x, 0.0, env); }, -30.0, 60.0, 4096);
    for (int k = 0; k < 100; ++k) {
        const double t = 50.0 * (k + 1) / 100.0;
        const Cplx closed = interval_cross_overlap(kA, kB, t, env, -kInf, kInf);
        worst_closed = std::max(worst_closed, std::abs(closed - initial));
        const auto ga = oracle::grid_evolve_ck(sample_a, 0.0, t, env);
        const auto gb = oracle::grid_evolve_ck(sample_b, 0.0, t, env);
        worst_grid = std::max(worst_grid, std::abs(grid_inner(ga, gb) - initial));
    }
    detail = "max drift closed " + sci(worst_closed) + ", grid " +
             sci(worst_grid);
    return worst_closed < 1e-10 && worst_grid < 1e-6;
}

// 2. CK closed form vs spectral grid, x in [-20,20], t <= 10
bool ck_vs_grid(std::string& detail) {
    double worst = 0.0;
    for (double gamma : {0.0, 0.1, 0.2}) {
        const Environment env = env_of(gamma);
        const auto initial = oracle::make_grid(
            [&](double x) { return wavefunction_at(kA, x, 0.0, env); }, -45.0, 95.0, 8192);
        for (int k = 1; k <= 10; ++k) {
            const double t = static_cast<double>(k);
            const auto grid = oracle::grid_evolve_ck(initial, 0.0, t, env);
            for (std::size_t j = 0; j < grid.values.size(); ++j) {
                const double x = grid.x(j);
                if (x < -20.0 || x > 20.0) continue;
                worst = std::max(worst,
                                 std::abs(grid.values[j] - wavefunction_at(kA, x, t, env)));
            }
        }
    }
    detail = "max pointwise error " + sci(worst);
    return worst <= 1e-6;
}

// 3. MSS curves: frictionless growth/ordering, gamma=0.2 saturation
bool mss_structure(std::string& detail) {
    const PureKernel free_kernel(make_ck_pair(kA, kB, env_of(0.0)));
    bool ok = true;
    double prev_be = -1.0, prev_mb = -1.0, prev_fd = -1.0;
    for (double t = 0.0; t <= 20.0 + 1e-9; t += 0.5) {
        const double be = mss(Statistics::BE, free_kernel, t);
        const double mb = mss(Statistics::MB, free_kernel, t);
        const double fd = mss(Statistics::FD, free_kernel, t);
        ok = ok && fd > mb && mb >= be;
        if (t > 0.0) ok = ok && be > prev_be && mb > prev_mb && fd > prev_fd;
        prev_be = be;
        prev_mb = mb;
        prev_fd = fd;
    }

    const PureKernel damped(make_ck_pair(kA, kB, env_of(0.2)));
    double worst_drift = 0.0;
    for (Statistics stats : {Statistics::BE, Statistics::MB, Statistics::FD})
        worst_drift = std::max(
            worst_drift, std::abs(mss(stats, damped, 50.0) - mss(stats, damped, 40.0)));
    detail = "late-time drift " + sci(worst_drift);
    return ok && worst_drift < 1e-3;
}

double delta_p(double gamma) {
    const PureKernel kernel(make_ck_pair(kA, kB, env_of(gamma)));
    return detection_ratio_single(Statistics::BE, kernel, 50.0, 1.0) -
           detection_ratio_single(Statistics::FD, kernel, 50.0, 1.0);
}

// 4. critical friction near 0.78
bool critical_friction(std::string& detail) {
    double lo = 0.70, hi = 0.85;
    const double flo = delta_p(lo), fhi = delta_p(hi);
    if (flo * fhi >= 0.0) {
        detail = "no sign change in [0.70, 0.85]";
        return false;
    }
    for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        (delta_p(mid) * flo > 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    detail = "gamma_c = " + sci(root);
    return std::abs(root - 0.78) <= 0.05;
}

// 5. p_+ falls, p_- rises with friction below gamma ~ 0.22
bool monotonic_regime(std::string& detail) {
    double prev_p = kInf, prev_m = -kInf;
    for (int k = 0; k < 20; ++k) {
        const double gamma = 0.01 + (k + 1) * (0.22 - 0.01) / 21.0;
        const PureKernel kernel(make_ck_pair(kA, kB, env_of(gamma)));
        const double pp = detection_ratio_single(Statistics::BE, kernel, 50.0, 1.0);
        const double pm = detection_ratio_single(Statistics::FD, kernel, 50.0, 1.0);
        if (!(pp < prev_p) || !(pm > prev_m)) {
            detail = "monotonicity broken at gamma = " + sci(gamma);
            return false;
        }
        prev_p = pp;
        prev_m = pm;
    }
    detail = "strict on all 20 points";
    return true;
}

// 6. fermion coincidence zero across slit configurations
bool fermion_coincidence(std::string& detail) {
    const SlitConfig cfg{4.0, 1.0, 1.0};
    const GaussianPacket src{0.0, 0.0, 0.9};
    double worst = 0.0;
    for (double gamma : {0.0, 0.1, 0.2})
        for (double sb : {0.1, 0.8})
            for (double t : {2.0, 5.0})
                worst = std::max(worst,
                                 joint_fixed_moving(Statistics::FD, src,
                                                    GaussianPacket{0.0, 0.0, sb}, cfg, 0.0, t,
                                                    env_of(gamma)));
    detail = "max |Psi_-(0,0)|^2 = " + sci(worst);
    return worst < 1e-20;
}

// 7. CL width vs RK4 moment oracle
bool cl_width(std::string& detail) {
    double worst = 0.0;
    for (double gamma : {0.1, 0.2})
        for (double kBT : {5.0, 10.0}) {
            const Environment env = env_of(gamma, kBT);
            for (int k = 1; k <= 10; ++k) {
                const double t = static_cast<double>(k);
                const double w2 = std::pow(thermal_width(kA, t, env), 2);
                const double ref = oracle::cl_moment_ode(kA, t, env).var_xx;
                worst = std::max(worst, std::abs(w2 - ref) / ref);
            }
        }
    detail = "max relative error " + sci(worst);
    return worst <= 1e-8;
}

// 8. CL trace preservation
bool cl_trace(std::string& detail) {
    const Cplx initial = initial_overlap(kA, kB, env_of(0.0));
    double worst = 0.0;
    for (double gamma : {0.1, 0.2})
        for (double kBT : {5.0, 10.0}) {
            const Environment env = env_of(gamma, kBT);
            for (int k = 1; k <= 10; ++k) {
                const Cplx trace = oracle::adaptive_quadrature(
                    [&](double x) {
                        return cl_cross_density(kA, kB, x, static_cast<double>(k), env);
                    },
                    -kInf, kInf, 1e-12);
                worst = std::max(worst, std::abs(trace - initial));
            }
        }
    detail = "max trace drift " + sci(worst);
    return worst < 1e-8;
}

// 9. continuity equation at random points, fig-7 slit states
bool continuity(std::string& detail) {
    const SlitConfig cfg{4.0, 1.0, 1.0};
    const GaussianPacket src{0.0, 0.0, 0.9};
    const Environment env = env_of(0.1);
    const double h = 1e-4;
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> xd(-10.0, 10.0), td(1.5, 5.0);
    const Statistics all[] = {Statistics::MB, Statistics::BE, Statistics::FD};

    double worst = 0.0;
    for (double sb : {0.8, 0.1}) {
        const PureStatePair states = make_slit_pair(src, GaussianPacket{0.0, 0.0, sb}, cfg, env);
        const PureKernel kernel(states);
        for (int k = 0; k < 50; ++k) {
            const double x = xd(rng), t = td(rng);
            const Statistics stats = all[k % 3];
            const double drho = (sp_density(stats, kernel, x, t + h) -
                                 sp_density(stats, kernel, x, t - h)) /
                                (2.0 * h);
            const double dj = (sp_current(stats, states, x + h, t) -
                               sp_current(stats, states, x - h, t)) /
                              (2.0 * h);
            worst = std::max(worst, std::abs(drho + dj));
        }
    }
    detail = "max residual " + sci(worst);
    return worst < 1e-5;
}

// 10. double detector at D=0 vs single; point limit vs d = 1e-3
bool detector_consistency(std::string& detail) {
    double worst_zero = 0.0, worst_point = 0.0;
    for (double gamma : {0.05, 0.1}) {
        const Environment env = env_of(gamma);
        const PureStatePair states = make_ck_pair(kA, kB, env);
        const PureKernel kernel(states);
        for (Statistics stats : {Statistics::BE, Statistics::FD}) {
            for (double t : {1.0, 2.5, 5.0}) {
                const double dbl = detection_ratio_double(stats, states, t, 0.0, 1.0);
                const double sgl = detection_ratio_single(stats, kernel, t, 1.0);
                worst_zero = std::max(worst_zero, std::abs(dbl - sgl));
            }
        }
    }
    {
        // point-detector limit at the fig-3 operating point
        const PureStatePair states = make_ck_pair(kA, kB, env_of(0.05));
        for (Statistics stats : {Statistics::BE, Statistics::FD}) {
            const double narrow = detection_ratio_double(stats, states, 2.5, 1.0, 1e-3);
            const double point = detection_ratio_point(stats, states, 2.5, 1.0);
            worst_point = std::max(worst_point, std::abs(narrow - point));
        }
    }
    detail = "D=0 gap " + sci(worst_zero) + ", point gap " +
             sci(worst_point);
    return worst_zero <= 1e-14 && worst_point <= 1e-4;
}

// 11. whole-line detector limit in both frameworks
bool whole_line(std::string& detail) {
    double worst = 0.0;
    {
        const Environment env = env_of(0.1);
        const PureKernel kernel(make_ck_pair(kA, kB, env));
        for (double t : {1.0, 2.0, 5.0}) {
            const double d = 50.0 * packet_frame(kA, t, env).sigma_t;
            for (Statistics stats : {Statistics::BE, Statistics::FD})
                worst = std::max(worst,
                                 std::abs(detection_ratio_single(stats, kernel, t, d) - 1.0));
        }
    }
    {
        const Environment env = env_of(0.1, 5.0);
        const CLKernel kernel(kA, kB, env);
        for (double t : {1.0, 2.0, 5.0}) {
            const double d = 50.0 * thermal_width(kA, t, env);
            for (Statistics stats : {Statistics::BE, Statistics::FD})
                worst = std::max(worst,
                                 std::abs(detection_ratio_single(stats, kernel, t, d) - 1.0));
        }
    }
    detail = "max deviation " + sci(worst);
    return worst < 1e-10;
}

// 12. fig-7 statistics separation via L1 distances of sp densities
bool statistics_separation(std::string& detail) {
    const SlitConfig cfg{4.0, 1.0, 1.0};
    const GaussianPacket src{0.0, 0.0, 0.9};
    const double t = 5.0;

    auto l1 = [&](const PureKernel& kernel, Statistics s1, Statistics s2) {
        // Simpson rule over the populated window; scale-free functional
        const double lo = -25.0, hi = 25.0;
        const int n = 1000;  // even
        const double dx = (hi - lo) / n;
        double acc = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double x = lo + j * dx;
            const double wgt = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            acc += wgt * std::abs(sp_density(s1, kernel, x, t) - sp_density(s2, kernel, x, t));
        }
        return acc * dx / 3.0;
    };

    // high-overlap sources: fermions sit farther from the MB baseline
    bool high_ok = true;
    for (double gamma : {0.0, 0.1, 0.2}) {
        const PureKernel kernel(
            make_slit_pair(src, GaussianPacket{0.0, 0.0, 0.8}, cfg, env_of(gamma)));
        high_ok = high_ok && l1(kernel, Statistics::FD, Statistics::MB) >
                                 l1(kernel, Statistics::BE, Statistics::MB);
    }

    // low-overlap sources: dissipation washes the distinctions out
    std::vector<double> spread;
    for (double gamma : {0.0, 0.1, 0.2}) {
        const PureKernel kernel(
            make_slit_pair(src, GaussianPacket{0.0, 0.0, 0.1}, cfg, env_of(gamma)));
        const double m = std::max({l1(kernel, Statistics::FD, Statistics::MB),
                                   l1(kernel, Statistics::BE, Statistics::MB),
                                   l1(kernel, Statistics::FD, Statistics::BE)});
        spread.push_back(m);
    }
    const bool low_ok = spread[0] > spread[1] && spread[1] > spread[2];
    detail = "low-overlap spread " + sci(spread[0]) + " > " +
             sci(spread[1]) + " > " + sci(spread[2]);
    return high_ok && low_ok;
}

// 13. detection ratios against raw 2D quadrature, both frameworks
bool quadrature_equivalence(std::string& detail) {
    double worst = 0.0;

    const Environment ck_env = env_of(0.1);
    const PureStatePair states = make_ck_pair(kA, kB, ck_env);
    const PureKernel ck_kernel(states);
    const struct {
        Statistics stats;
        double t, d;
    } ck_pts[] = {{Statistics::BE, 2.5, 1.0}, {Statistics::FD, 2.5, 1.0},
                  {Statistics::BE, 5.0, 0.5}};
    for (const auto& p : ck_pts) {
        const double got = detection_ratio_single(p.stats, ck_kernel, p.t, p.d);
        const Cplx num = oracle::adaptive_quadrature_2d(
            [&](double x1, double x2) {
                return Cplx(joint_density(p.stats, states, x1, x2, p.t));
            },
            -p.d, p.d, -p.d, p.d, 1e-10);
        const Cplx den = oracle::adaptive_quadrature_2d(
            [&](double x1, double x2) {
                return Cplx(joint_density(Statistics::MB, states, x1, x2, p.t));
            },
            -p.d, p.d, -p.d, p.d, 1e-10);
        worst = std::max(worst, std::abs(got - num.real() / den.real()));
    }

    const Environment cl_env = env_of(0.1, 5.0);
    const CLKernel cl_kernel(kA, kB, cl_env);
    const struct {
        Statistics stats;
        double t, d;
    } cl_pts[] = {{Statistics::BE, 2.0, 1.0}, {Statistics::FD, 2.0, 1.0},
                  {Statistics::BE, 4.0, 0.5}};
    for (const auto& p : cl_pts) {
        const double got = detection_ratio_single(p.stats, cl_kernel, p.t, p.d);
        const double n = symmetrized_norm(p.stats, cl_kernel.overlap());
        const double sign = p.stats == Statistics::FD ? -1.0 : 1.0;
        auto joint = [&](double x1, double x2, bool mb) {
            const double direct = cl_kernel.density_aa(x1, p.t) * cl_kernel.density_bb(x2, p.t) +
                                  cl_kernel.density_bb(x1, p.t) * cl_kernel.density_aa(x2, p.t);
            if (mb) return 0.5 * direct;
            const double exch = 2.0 * (cl_kernel.density_ab(x1, p.t) *
                                       std::conj(cl_kernel.density_ab(x2, p.t)))
                                          .real();
            return n * n * (direct + sign * exch);
        };
        const Cplx num = oracle::adaptive_quadrature_2d(
            [&](double x1, double x2) { return Cplx(joint(x1, x2, false)); }, -p.d, p.d, -p.d,
            p.d, 1e-10);
        const Cplx den = oracle::adaptive_quadrature_2d(
            [&](double x1, double x2) { return Cplx(joint(x1, x2, true)); }, -p.d, p.d, -p.d,
            p.d, 1e-10);
        worst = std::max(worst, std::abs(got - num.real() / den.real()));
    }
    detail = "max deviation " + sci(worst);
    return worst <= 1e-8;
}

}  // namespace

int main() {
    const struct {
        const char* name;
        bool (*run)(std::string&);
    } criteria[] = {
        {"overlap invariance (closed form 1e-10, grid 1e-6)", overlap_invariance},
        {"CK closed form vs grid oracle <= 1e-6", ck_vs_grid},
        {"MSS growth, ordering and late-time saturation", mss_structure},
        {"critical friction gamma_c = 0.78 +- 0.05", critical_friction},
        {"p_+/p_- monotone in gamma on (0.01, 0.22)", monotonic_regime},
        {"fermion coincidence < 1e-20", fermion_coincidence},
        {"CL width vs moment ODE <= 1e-8", cl_width},
        {"CL trace preservation < 1e-8", cl_trace},
        {"continuity residual < 1e-5 at 100 random points", continuity},
        {"detector consistency (D=0 and point limits)", detector_consistency},
        {"whole-line detector ratio -> 1 within 1e-10", whole_line},
        {"two-slit statistics separation (L1 distances)", statistics_separation},
        {"detection ratios vs 2D quadrature <= 1e-8", quadrature_equivalence},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", index, c.name,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
