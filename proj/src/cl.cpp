#include "dissipair/cl.hpp"

#include <cmath>

#include "dissipair/ck.hpp"
#include "dissipair/special.hpp"

namespace dissipair {

double diffusion_coefficient(const Environment& env) {
    if (env.gamma < 0.0 || env.kBT < 0.0)
        throw DomainError("diffusion_coefficient: gamma and kBT must be >= 0");
    return 2.0 * env.m * env.gamma * env.kBT;
}

double diffusion_variance(double t, const Environment& env) {
    if (t < 0.0) throw DomainError("diffusion_variance: t < 0");
    const double D = diffusion_coefficient(env);
    if (D == 0.0) return 0.0;
    const double g = env.gamma;
    const double m2 = env.m * env.m;
    const double u = g * t;
    if (u < 1e-4) {
        // (4u + 4e^{-2u} - 3 - e^{-4u})/(8 g^3) expanded about u = 0
        const double t3 = t * t * t;
        return D / m2 * t3 *
               (2.0 / 3.0 - u + (14.0 / 15.0) * u * u - (2.0 / 3.0) * u * u * u);
    }
    // expm1 keeps the leading (16/3)u^3 free of cancellation near the threshold
    const double f = 4.0 * u + 4.0 * std::expm1(-2.0 * u) - std::expm1(-4.0 * u);
    return D * f / (8.0 * m2 * g * g * g);
}

double thermal_width(const GaussianPacket& packet, double t, const Environment& env) {
    const CKPacketFrame f = packet_frame(packet, t, env);
    return std::sqrt(f.sigma_t * f.sigma_t + diffusion_variance(t, env));
}

CLCrossParams cl_cross_params(const GaussianPacket& a, const GaussianPacket& b, double t,
                              const Environment& env) {
    if (a.x0 != b.x0)
        throw UnsupportedGeometry("cl_cross_params: packets must share the same center");
    if (t < 0.0) throw DomainError("cl_cross_params: t < 0");
    const double s2 = a.sigma0 * a.sigma0, sb2 = b.sigma0 * b.sigma0;
    const double S = s2 + sb2;
    const double P = s2 * sb2 / S;
    const double dp = a.p0 - b.p0;
    const double tau = rescaled_time(t, env);
    const double hbar = env.hbar, m = env.m;

    CLCrossParams p;
    p.a0 = -P * dp * dp / (hbar * hbar);
    p.a1 = Cplx(a.x0 + (a.p0 * s2 + b.p0 * sb2) / (m * S) * tau,
                2.0 * P * dp / hbar);
    p.a2 = Cplx(P + hbar * hbar * tau * tau / (4.0 * m * m * S) +
                    0.5 * diffusion_variance(t, env),
                -hbar / (2.0 * m) * (s2 - sb2) / S * tau);
    if (p.a2.real() <= 0.0)
        throw BranchError("cl_cross_params: Re(a2) <= 0");
    return p;
}

double cl_self_density(const GaussianPacket& packet, double x, double t, const Environment& env) {
    const CKPacketFrame f = packet_frame(packet, t, env);
    const double w = thermal_width(packet, t, env);
    const double u = (x - f.x_t) / w;
    return std::exp(-0.5 * u * u) / (std::sqrt(2.0 * M_PI) * w);
}

namespace {

double cross_amplitude(const GaussianPacket& a, const GaussianPacket& b) {
    const double S = a.sigma0 * a.sigma0 + b.sigma0 * b.sigma0;
    return std::sqrt(2.0 * a.sigma0 * b.sigma0 / S);
}

}  // namespace

Cplx cl_cross_density(const GaussianPacket& a, const GaussianPacket& b, double x, double t,
                      const Environment& env) {
    const CLCrossParams p = cl_cross_params(a, b, t, env);
    const Cplx dx = x - p.a1;
    return cross_amplitude(a, b) / (2.0 * std::sqrt(M_PI * p.a2)) *
           std::exp(p.a0 - dx * dx / (4.0 * p.a2));
}

CLIntervals cl_interval_integrals(const GaussianPacket& a, const GaussianPacket& b, double t,
                                  const Environment& env, double lo, double hi) {
    if (!(lo < hi)) throw DomainError("cl_interval_integrals: lo >= hi");

    const auto self_interval = [&](const GaussianPacket& p) {
        const CKPacketFrame f = packet_frame(p, t, env);
        const double w = thermal_width(p, t, env);
        const double scale = std::sqrt(2.0) * w;
        return 0.5 * (std::erf((f.x_t - lo) / scale) - std::erf((f.x_t - hi) / scale));
    };
    const auto cross_interval = [&](const GaussianPacket& p, const GaussianPacket& q) {
        const CLCrossParams cp = cl_cross_params(p, q, t, env);
        // rho_pq as exp(-c2 x^2 + c1 x + c0) with the amplitude folded in
        const Cplx c2 = 1.0 / (4.0 * cp.a2);
        const Cplx c1 = 2.0 * c2 * cp.a1;
        const Cplx c0 = Cplx(cp.a0) - c2 * cp.a1 * cp.a1;
        const Cplx amp = cross_amplitude(p, q) / (2.0 * std::sqrt(M_PI * cp.a2));
        return amp * gaussian_interval_integral(c2, c1, c0, lo, hi);
    };

    CLIntervals out;
    out.I_aa = self_interval(a);
    out.I_bb = self_interval(b);
    out.I_ab = cross_interval(a, b);
    out.I_ba = cross_interval(b, a);
    return out;
}

Moments cl_cross_moments(const GaussianPacket& a, const GaussianPacket& b, double t,
                         const Environment& env) {
    const CLCrossParams p = cl_cross_params(a, b, t, env);
    const Cplx m0 = cross_amplitude(a, b) * std::exp(p.a0);
    return {m0, m0 * p.a1, m0 * (p.a1 * p.a1 + 2.0 * p.a2)};
}

}  // namespace dissipair
