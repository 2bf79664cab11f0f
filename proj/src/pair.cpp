#include "dissipair/pair.hpp"

#include <cmath>
#include <limits>

#include "dissipair/ck.hpp"

namespace dissipair {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double kDetectorFloor = 1e-300;
constexpr double kNodeFloor = 1e-150;

double sign_of(Statistics stats) { return stats == Statistics::FD ? -1.0 : 1.0; }
}  // namespace

PureStatePair::PureStatePair(Factory psi, Factory phi, Environment env, double t_ref)
    : psi_(std::move(psi)), phi_(std::move(phi)), env_(env) {
    overlap_ = pair_integral(psi_(t_ref), phi_(t_ref), -inf, inf);
}

PureStatePair make_ck_pair(const GaussianPacket& a, const GaussianPacket& b,
                           const Environment& env) {
    return PureStatePair(
        [a, env](double t) { return GaussianSum{packet_term(a, t, env)}; },
        [b, env](double t) { return GaussianSum{packet_term(b, t, env)}; }, env, 0.0);
}

double PureKernel::density_aa(double x, double t) const {
    return std::norm(states_.psi(t).value(x));
}

double PureKernel::density_bb(double x, double t) const {
    return std::norm(states_.phi(t).value(x));
}

Cplx PureKernel::density_ab(double x, double t) const {
    // rho_ab(x,x,t) = psi(x,t) conj(phi(x,t))
    return states_.psi(t).value(x) * std::conj(states_.phi(t).value(x));
}

double PureKernel::interval_aa(double t, double lo, double hi) const {
    const GaussianSum f = states_.psi(t);
    return pair_integral(f, f, lo, hi).real();
}

double PureKernel::interval_bb(double t, double lo, double hi) const {
    const GaussianSum f = states_.phi(t);
    return pair_integral(f, f, lo, hi).real();
}

Cplx PureKernel::interval_ab(double t, double lo, double hi) const {
    return std::conj(pair_integral(states_.psi(t), states_.phi(t), lo, hi));
}

Moments PureKernel::moments_aa(double t) const {
    const GaussianSum f = states_.psi(t);
    return pair_moments(f, f);
}

Moments PureKernel::moments_bb(double t) const {
    const GaussianSum f = states_.phi(t);
    return pair_moments(f, f);
}

Moments PureKernel::moments_ab(double t) const {
    // momenta of psi phi* = conj(integrals of conj(psi) phi)
    const Moments m = pair_moments(states_.psi(t), states_.phi(t));
    return {std::conj(m.m0), std::conj(m.m1), std::conj(m.m2)};
}

CLKernel::CLKernel(GaussianPacket a, GaussianPacket b, Environment env)
    : a_(a), b_(b), env_(env) {
    overlap_ = cl_cross_moments(a_, b_, 0.0, env_).m0;
}

double CLKernel::density_aa(double x, double t) const {
    return cl_self_density(a_, x, t, env_);
}

double CLKernel::density_bb(double x, double t) const {
    return cl_self_density(b_, x, t, env_);
}

Cplx CLKernel::density_ab(double x, double t) const {
    return cl_cross_density(a_, b_, x, t, env_);
}

double CLKernel::interval_aa(double t, double lo, double hi) const {
    return cl_interval_integrals(a_, b_, t, env_, lo, hi).I_aa;
}

double CLKernel::interval_bb(double t, double lo, double hi) const {
    return cl_interval_integrals(a_, b_, t, env_, lo, hi).I_bb;
}

Cplx CLKernel::interval_ab(double t, double lo, double hi) const {
    return cl_interval_integrals(a_, b_, t, env_, lo, hi).I_ab;
}

Moments CLKernel::moments_aa(double t) const {
    const CKPacketFrame f = packet_frame(a_, t, env_);
    const double w = thermal_width(a_, t, env_);
    return {1.0, f.x_t, w * w + f.x_t * f.x_t};
}

Moments CLKernel::moments_bb(double t) const {
    const CKPacketFrame f = packet_frame(b_, t, env_);
    const double w = thermal_width(b_, t, env_);
    return {1.0, f.x_t, w * w + f.x_t * f.x_t};
}

Moments CLKernel::moments_ab(double t) const {
    return cl_cross_moments(a_, b_, t, env_);
}

double symmetrized_norm(Statistics stats, Cplx overlap) {
    const double ov2 = std::norm(overlap);
    if (ov2 > 1.0 + 1e-12)
        throw DomainError("symmetrized_norm: |overlap| > 1");
    if (stats == Statistics::MB) return 1.0 / std::sqrt(2.0);
    if (stats == Statistics::FD && 1.0 - ov2 < 1e-12)
        throw PauliExclusion("symmetrized_norm: antisymmetric state vanishes");
    return 1.0 / std::sqrt(2.0 * (1.0 + sign_of(stats) * ov2));
}

double mss(Statistics stats, const PairKernel& kernel, double t) {
    const Moments maa = kernel.moments_aa(t);
    const Moments mbb = kernel.moments_bb(t);
    const double mss_mb =
        maa.m2.real() + mbb.m2.real() - 2.0 * maa.m1.real() * mbb.m1.real();
    if (stats == Statistics::MB) return mss_mb;

    const double s = sign_of(stats);
    const double n = symmetrized_norm(stats, kernel.overlap());
    const Moments mab = kernel.moments_ab(t);
    const Cplx m0_ba = std::conj(mab.m0);
    return 2.0 * n * n *
           (mss_mb - s * 2.0 * std::norm(mab.m1) + s * 2.0 * (mab.m2 * m0_ba).real());
}

double detection_ratio_single(Statistics stats, const PairKernel& kernel, double t, double d) {
    if (!(d > 0.0)) throw DomainError("detection_ratio_single: d <= 0");
    if (stats == Statistics::MB) return 1.0;
    const double n = symmetrized_norm(stats, kernel.overlap());
    const double I_aa = kernel.interval_aa(t, -d, d);
    const double I_bb = kernel.interval_bb(t, -d, d);
    if (I_aa < kDetectorFloor || I_bb < kDetectorFloor)
        throw DegenerateDetector("detection_ratio_single: no probability mass in detector");
    const Cplx I_ab = kernel.interval_ab(t, -d, d);
    return 2.0 * n * n * (1.0 + sign_of(stats) * std::norm(I_ab) / (I_aa * I_bb));
}

double detection_ratio_double(Statistics stats, const PureStatePair& states, double t, double D,
                              double d) {
    if (!(d > 0.0)) throw DomainError("detection_ratio_double: d <= 0");
    if (stats == Statistics::MB) return 1.0;
    const double n = symmetrized_norm(stats, std::conj(states.overlap_psi_phi()));

    const GaussianSum psi = states.psi(t), phi = states.phi(t);
    const double rlo = D - d, rhi = D + d;    // right detector
    const double llo = -D - d, lhi = -D + d;  // left detector
    const Cplx J_right = pair_integral(psi, phi, rlo, rhi);  // int psi* phi
    const Cplx J_left = pair_integral(phi, psi, llo, lhi);   // int phi* psi
    const double K_psi_r = pair_integral(psi, psi, rlo, rhi).real();
    const double K_psi_l = pair_integral(psi, psi, llo, lhi).real();
    const double K_phi_r = pair_integral(phi, phi, rlo, rhi).real();
    const double K_phi_l = pair_integral(phi, phi, llo, lhi).real();
    const double denom = K_psi_r * K_phi_l + K_phi_r * K_psi_l;
    if (denom < kDetectorFloor)
        throw DegenerateDetector("detection_ratio_double: no probability mass in detectors");
    return 2.0 * n * n * (1.0 + sign_of(stats) * 2.0 * (J_right * J_left).real() / denom);
}

double detection_ratio_point(Statistics stats, const PureStatePair& states, double t, double D) {
    if (stats == Statistics::MB) return 1.0;
    const double n = symmetrized_norm(stats, std::conj(states.overlap_psi_phi()));
    const GaussianSum psi = states.psi(t), phi = states.phi(t);
    const Cplx psi_p = psi.value(D), psi_m = psi.value(-D);
    const Cplx phi_p = phi.value(D), phi_m = phi.value(-D);
    for (const Cplx v : {psi_p, psi_m, phi_p, phi_m})
        if (std::abs(v) < kNodeFloor)
            throw NodeAtDetector("detection_ratio_point: wavefunction node at detector");
    const Cplx r = psi_p * phi_m / (psi_m * phi_p);
    const Cplx denom = r + std::conj(1.0 / r);
    return 2.0 * n * n * (1.0 + sign_of(stats) * 2.0 * (1.0 / denom).real());
}

double sp_density(Statistics stats, const PairKernel& kernel, double x, double t) {
    const double direct = kernel.density_aa(x, t) + kernel.density_bb(x, t);
    if (stats == Statistics::MB) return 0.5 * direct;
    const double n = symmetrized_norm(stats, kernel.overlap());
    const Cplx m0_ba = std::conj(kernel.overlap());
    const double exch = 2.0 * (m0_ba * kernel.density_ab(x, t)).real();
    return n * n * (direct + sign_of(stats) * exch);
}

double sp_current(Statistics stats, const PureStatePair& states, double x, double t) {
    const Environment& env = states.env();
    const double mobility = env.hbar / env.m * std::exp(-2.0 * env.gamma * t);
    const GaussianSum psi = states.psi(t), phi = states.phi(t);
    const Cplx pv = psi.value(x), pd = psi.derivative(x);
    const Cplx fv = phi.value(x), fd = phi.derivative(x);
    const Cplx direct = std::conj(pv) * pd + std::conj(fv) * fd;
    if (stats == Statistics::MB) return 0.5 * mobility * direct.imag();

    const double n = symmetrized_norm(stats, std::conj(states.overlap_psi_phi()));
    const Cplx ov_psi_phi = states.overlap_psi_phi();     // <psi|phi>
    const Cplx ov_phi_psi = std::conj(ov_psi_phi);        // <phi|psi>
    const Cplx exch = ov_phi_psi * std::conj(pv) * fd + ov_psi_phi * std::conj(fv) * pd;
    return n * n * mobility * (direct + sign_of(stats) * exch).imag();
}

double joint_density(Statistics stats, const PureStatePair& states, double x1, double x2,
                     double t) {
    const GaussianSum psi = states.psi(t), phi = states.phi(t);
    const Cplx p1 = psi.value(x1), p2 = psi.value(x2);
    const Cplx f1 = phi.value(x1), f2 = phi.value(x2);
    if (stats == Statistics::MB)
        return 0.5 * (std::norm(p1 * f2) + std::norm(f1 * p2));
    const double n = symmetrized_norm(stats, std::conj(states.overlap_psi_phi()));
    return n * n * std::norm(p1 * f2 + sign_of(stats) * f1 * p2);
}

}  // namespace dissipair
