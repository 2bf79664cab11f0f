#pragma once

#include "dissipair/gaussian_sum.hpp"
#include "dissipair/types.hpp"

namespace dissipair {

/// Snapshot of the closed-form Gaussian evolution under friction at time t.
struct CKPacketFrame {
    Cplx s_t;          // complex width, Re(s_t) = sigma0
    double x_t;        // packet center
    double sigma_t;    // |s_t|
    double action_cl;  // classical action along the center trajectory
    double tau;        // rescaled time
};

/// tau(t) = (1 - exp(-2 gamma t)) / (2 gamma); series below gamma*t < 1e-8.
double rescaled_time(double t, const Environment& env);

CKPacketFrame packet_frame(const GaussianPacket& packet, double t, const Environment& env);

/// Freely evolved packet as a single complex-Gaussian term.
GaussianTerm packet_term(const GaussianPacket& packet, double t, const Environment& env);

Cplx wavefunction_at(const GaussianPacket& packet, double x, double t, const Environment& env);

/// <phi0|psi0> for co-centered packets; real. Throws UnsupportedGeometry
/// when the centers differ (no closed form; integrate numerically instead).
Cplx initial_overlap(const GaussianPacket& a, const GaussianPacket& b, const Environment& env);

/// integral of |psi(x,t)|^2 over [lo, hi]; in [0, 1].
double interval_probability(const GaussianPacket& packet, double t, const Environment& env,
                            double lo, double hi);

/// integral of conj(psi_a(x,t)) psi_b(x,t) over [lo, hi].
Cplx interval_cross_overlap(const GaussianPacket& a, const GaussianPacket& b, double t,
                            const Environment& env, double lo, double hi);

/// m_n = integral of x^n conj(psi_a(x,t)) psi_b(x,t) over the real line.
Moments cross_moments(const GaussianPacket& a, const GaussianPacket& b, double t,
                      const Environment& env);

}  // namespace dissipair
