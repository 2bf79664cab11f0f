#pragma once

#include "dissipair/types.hpp"

namespace dissipair {

/// D = 2 m gamma kBT
double diffusion_coefficient(const Environment& env);

/// Position variance added by thermal diffusion up to time t,
/// D (4 gamma t + 4 e^{-2 gamma t} - 3 - e^{-4 gamma t}) / (8 m^2 gamma^3).
/// Series expansion below gamma*t < 1e-4 (the closed form loses all digits
/// there); leading behaviour (4/3)(gamma kBT / m) t^3.
double diffusion_variance(double t, const Environment& env);

/// Thermal width w_t of the evolved diagonal density; w_t >= sigma_t,
/// equality at D = 0.
double thermal_width(const GaussianPacket& packet, double t, const Environment& env);

/// Parameters of the evolved diagonal cross density
/// rho_ab(x,x,t) = sqrt(2 s sb/(s^2+sb^2)) exp[a0 - (x-a1)^2/(4 a2)] / (2 sqrt(pi a2)).
struct CLCrossParams {
    double a0;  // log-amplitude (momentum mismatch suppression)
    Cplx a1;    // complex center
    Cplx a2;    // complex squared width, Re > 0
};

CLCrossParams cl_cross_params(const GaussianPacket& a, const GaussianPacket& b, double t,
                              const Environment& env);

/// Diagonal rho_aa(x,x,t): normalized Gaussian of width w_t centered at x_t.
double cl_self_density(const GaussianPacket& packet, double x, double t, const Environment& env);

/// Diagonal rho_ab(x,x,t) for co-centered packets. rho_ba is the conjugate,
/// obtained by swapping the packet arguments.
Cplx cl_cross_density(const GaussianPacket& a, const GaussianPacket& b, double x, double t,
                      const Environment& env);

struct CLIntervals {
    double I_aa, I_bb;
    Cplx I_ab, I_ba;
};

/// Interval integrals of the four diagonal densities over [lo, hi]
/// (endpoints may be +-inf).
CLIntervals cl_interval_integrals(const GaussianPacket& a, const GaussianPacket& b, double t,
                                  const Environment& env, double lo, double hi);

/// m_n = integral of x^n rho_ab(x,x,t); m0 is conserved.
Moments cl_cross_moments(const GaussianPacket& a, const GaussianPacket& b, double t,
                         const Environment& env);

}  // namespace dissipair
