#include "dissipair/special.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace dissipair {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kDomainBox = 30.0;

// Rational-series coefficients for w(z) in the upper half plane
// (Fourier coefficients of exp(-t^2)(L^2+t^2) under t = L tan(theta/2)).
constexpr int kN = 64;

struct WeidemanTable {
    double L;
    std::array<double, kN> a;

    WeidemanTable() {
        L = std::sqrt(kN / std::sqrt(2.0));
        const int M = 2 * kN;
        for (int m = 1; m <= kN; ++m) {
            double sum = 0.0;
            for (int k = -M + 1; k <= M - 1; ++k) {
                const double theta = k * M_PI / M;
                const double t = L * std::tan(0.5 * theta);
                const double f = std::exp(-t * t) * (L * L + t * t);
                sum += f * std::cos(m * theta);
            }
            a[m - 1] = sum / (2.0 * M);
        }
    }
};

Cplx faddeeva_upper(Cplx z) {
    static const WeidemanTable tab;
    const Cplx iz(-z.imag(), z.real());
    const Cplx d = tab.L - iz;
    const Cplx Z = (tab.L + iz) / d;
    Cplx p = 0.0;
    for (int m = kN - 1; m >= 0; --m) p = p * Z + tab.a[m];
    return 2.0 * p / (d * d) + (1.0 / kSqrtPi) / d;
}

// Maclaurin series, adequate and cancellation-free for |z| <= 1.
Cplx erf_series(Cplx z) {
    const Cplx z2 = z * z;
    Cplx term = z;
    Cplx sum = z;
    for (int n = 1; n < 40; ++n) {
        term *= -z2 / static_cast<double>(n);
        const Cplx add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return (2.0 / kSqrtPi) * sum;
}

// erf at an antiderivative endpoint. Saturates to +-1 when the correction
// term exp(-u^2)/u underflows, so interval integrals stay defined for
// endpoints far outside the erf validation box.
Cplx erf_endpoint(Cplx u, double direction_sign) {
    if (std::isinf(u.real()) || std::isinf(u.imag()))
        return direction_sign;
    const double re2 = (u.real() - u.imag()) * (u.real() + u.imag());
    if (std::abs(u.real()) <= kDomainBox && std::abs(u.imag()) <= kDomainBox)
        return erf_complex(u);
    if (re2 > 50.0) return u.real() > 0 ? 1.0 : -1.0;
    throw DomainError("gaussian_interval_integral: erf argument outside validated domain");
}

}  // namespace

Cplx faddeeva_w(Cplx z) {
    require_finite(z, "faddeeva_w");
    if (z.imag() >= 0.0) return faddeeva_upper(z);
    return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

Cplx erf_complex(Cplx z) {
    require_finite(z, "erf_complex");
    if (std::abs(z.real()) > kDomainBox || std::abs(z.imag()) > kDomainBox)
        throw DomainError("erf_complex: argument outside validated domain");
    if (z.imag() == 0.0) return std::erf(z.real());
    if (std::abs(z) <= 1.0) return erf_series(z);

    // erf(z) = 1 - exp(-z^2) w(iz) for Re z >= 0; odd symmetry otherwise.
    const double sign = z.real() >= 0.0 ? 1.0 : -1.0;
    const Cplx zs = sign * z;
    const Cplx izs(-zs.imag(), zs.real());  // Im >= 0
    const Cplx r = 1.0 - std::exp(-zs * zs) * faddeeva_upper(izs);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw DomainError("erf_complex: result overflow");
    return sign * r;
}

Cplx gaussian_interval_integral(Cplx a, Cplx b, Cplx c, double lo, double hi) {
    require_finite(a, "gaussian_interval_integral");
    require_finite(b, "gaussian_interval_integral");
    require_finite(c, "gaussian_interval_integral");
    if (a.real() <= 0.0)
        throw DomainError("gaussian_interval_integral: Re(a) <= 0, integral diverges");
    if (!(lo < hi))
        throw DomainError("gaussian_interval_integral: lo >= hi");

    const Cplx sa = std::sqrt(a);  // principal branch, Re > 0
    const Cplx shift = b / (2.0 * sa);
    const Cplx pref = 0.5 * kSqrtPi / sa * std::exp(c + shift * shift);

    const auto endpoint = [&](double x, double dir) {
        if (std::isinf(x)) return Cplx(dir);
        return erf_endpoint(sa * x - shift, dir);
    };
    const Cplx r = pref * (endpoint(hi, 1.0) - endpoint(lo, -1.0));
    require_finite(r, "gaussian_interval_integral result");
    return r;
}

Moments gaussian_moments(Cplx a, Cplx b, Cplx c) {
    if (a.real() <= 0.0)
        throw DomainError("gaussian_moments: Re(a) <= 0, integral diverges");
    const Cplx m0 = std::sqrt(M_PI / a) * std::exp(c + b * b / (4.0 * a));
    const Cplx mu = b / (2.0 * a);
    return {m0, mu * m0, (mu * mu + 0.5 / a) * m0};
}

}  // namespace dissipair
