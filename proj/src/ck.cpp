#include "dissipair/ck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dissipair/special.hpp"

namespace dissipair {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

double rescaled_time(double t, const Environment& env) {
    if (t < 0.0) throw DomainError("rescaled_time: t < 0");
    const double g = env.gamma;
    if (std::isinf(t)) return g > 0.0 ? 1.0 / (2.0 * g) : t;
    const double u = 2.0 * g * t;
    if (g * t < 1e-8)  // series avoids cancellation in (1 - e^{-u})/u
        return t * (1.0 - u / 2.0 + u * u / 6.0 - u * u * u / 24.0);
    return -std::expm1(-u) / (2.0 * g);
}

CKPacketFrame packet_frame(const GaussianPacket& packet, double t, const Environment& env) {
    if (packet.sigma0 <= 0.0) throw DomainError("packet_frame: sigma0 <= 0");
    const double tau = rescaled_time(t, env);
    const Cplx s(packet.sigma0,
                 env.hbar * tau / (2.0 * env.m * packet.sigma0));
    CKPacketFrame frame;
    frame.s_t = s;
    frame.x_t = packet.x0 + packet.p0 / env.m * tau;
    frame.sigma_t = std::abs(s);
    frame.action_cl = packet.p0 * packet.p0 / (2.0 * env.m) * tau;
    frame.tau = tau;
    return frame;
}

GaussianTerm packet_term(const GaussianPacket& packet, double t, const Environment& env) {
    const CKPacketFrame f = packet_frame(packet, t, env);
    const Cplx i(0.0, 1.0);
    GaussianTerm term;
    // (2 pi s_t^2)^{-1/4} as (2 pi sigma0^2)^{-1/4} sqrt(sigma0/s_t): the
    // principal branch is continuous because Re(s_t) = sigma0 > 0.
    term.amp = std::pow(2.0 * M_PI * packet.sigma0 * packet.sigma0, -0.25) *
               std::sqrt(packet.sigma0 / f.s_t);
    const Cplx q = 1.0 / (4.0 * packet.sigma0 * f.s_t);
    term.c2 = q;
    term.c1 = 2.0 * q * f.x_t + i * packet.p0 / env.hbar;
    term.c0 = -q * f.x_t * f.x_t - i * packet.p0 * f.x_t / env.hbar + i * f.action_cl / env.hbar;
    return term;
}

Cplx wavefunction_at(const GaussianPacket& packet, double x, double t, const Environment& env) {
    return packet_term(packet, t, env).value(x);
}

Cplx initial_overlap(const GaussianPacket& a, const GaussianPacket& b, const Environment& env) {
    if (a.x0 != b.x0)
        throw UnsupportedGeometry("initial_overlap: packets must share the same center");
    const double s2 = a.sigma0 * a.sigma0, sb2 = b.sigma0 * b.sigma0;
    const double dp = a.p0 - b.p0;
    return std::sqrt(2.0 * a.sigma0 * b.sigma0 / (s2 + sb2)) *
           std::exp(-s2 * sb2 / (s2 + sb2) * dp * dp / (env.hbar * env.hbar));
}

double interval_probability(const GaussianPacket& packet, double t, const Environment& env,
                            double lo, double hi) {
    if (!(lo < hi)) throw DomainError("interval_probability: lo >= hi");
    const CKPacketFrame f = packet_frame(packet, t, env);
    const double scale = std::sqrt(2.0) * f.sigma_t;
    const double p = 0.5 * (std::erf((f.x_t - lo) / scale) - std::erf((f.x_t - hi) / scale));
    return std::clamp(p, 0.0, 1.0);
}

Cplx interval_cross_overlap(const GaussianPacket& a, const GaussianPacket& b, double t,
                            const Environment& env, double lo, double hi) {
    const GaussianSum fa{packet_term(a, t, env)};
    const GaussianSum fb{packet_term(b, t, env)};
    return pair_integral(fa, fb, lo, hi);
}

Moments cross_moments(const GaussianPacket& a, const GaussianPacket& b, double t,
                      const Environment& env) {
    const GaussianSum fa{packet_term(a, t, env)};
    const GaussianSum fb{packet_term(b, t, env)};
    return pair_moments(fa, fb);
}

}  // namespace dissipair
