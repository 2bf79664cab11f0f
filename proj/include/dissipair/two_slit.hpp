#pragma once

#include "dissipair/ck.hpp"
#include "dissipair/gaussian_sum.hpp"
#include "dissipair/pair.hpp"
#include "dissipair/types.hpp"

namespace dissipair {

/// Two Gaussian slits at +-X of width w; the packet arrives at time t0.
struct SlitConfig {
    double X = 4.0;
    double w = 1.0;
    double t0 = 1.0;
};

/// Transverse wavefunction before the slits: zero-kick Gaussian centered at 0.
Cplx pre_slit_state(const GaussianPacket& packet, double x, double t, const Environment& env);

/// State emerging from one slit (slit_sign = +1 right, -1 left) for t >= t0,
/// as a single complex-Gaussian term. Throws BranchError if the quadratic
/// coefficient leaves the integrable half plane.
GaussianTerm slit_term(const GaussianPacket& packet, int slit_sign, const SlitConfig& cfg,
                       double t, const Environment& env);

Cplx slit_state(const GaussianPacket& packet, int slit_sign, const SlitConfig& cfg, double x,
                double t, const Environment& env);

/// Overlap of the two slit branches <state_A,signA | state_B,signB>,
/// time-invariant; evaluated at 2*t0.
Cplx slit_overlap(const GaussianPacket& a, int sign_a, const GaussianPacket& b, int sign_b,
                  const SlitConfig& cfg, const Environment& env);

/// <psi_B|psi_B'> for a single source packet.
Cplx slit_overlap(const GaussianPacket& a, const GaussianPacket& b, const SlitConfig& cfg,
                  const Environment& env);

/// Normalized superposition of the two slit branches at time t. The analytic
/// normalization is verified once per evaluation; deviations beyond 1e-8 are
/// corrected numerically with a diagnostic on stderr.
GaussianSum superposed_slit_sum(const GaussianPacket& packet, const SlitConfig& cfg, double t,
                                const Environment& env);

Cplx superposed_slit_state(const GaussianPacket& packet, const SlitConfig& cfg, double x,
                           double t, const Environment& env);

/// Two superposed slit states as a pure-state pair (for joint patterns,
/// single-particle densities and currents).
PureStatePair make_slit_pair(const GaussianPacket& a, const GaussianPacket& b,
                             const SlitConfig& cfg, const Environment& env);

/// Joint detection probability with one detector fixed at the origin and the
/// other at x: |Psi(0, x, t)|^2.
double joint_fixed_moving(Statistics stats, const GaussianPacket& a, const GaussianPacket& b,
                          const SlitConfig& cfg, double x, double t, const Environment& env);

}  // namespace dissipair
