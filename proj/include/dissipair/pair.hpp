#pragma once

#include <functional>
#include <memory>

#include "dissipair/cl.hpp"
#include "dissipair/gaussian_sum.hpp"
#include "dissipair/types.hpp"

namespace dissipair {

enum class Statistics { MB, BE, FD };

/// Abstract interval/moment access to the diagonal pair densities
/// rho_aa, rho_bb (real) and rho_ab (complex; rho_ba is its conjugate).
/// The one seam shared by the CK and CL backends.
class PairKernel {
public:
    virtual ~PairKernel() = default;

    /// m0 of rho_ab, i.e. integral of psi phi* -- conserved in time.
    virtual Cplx overlap() const = 0;

    virtual double density_aa(double x, double t) const = 0;
    virtual double density_bb(double x, double t) const = 0;
    virtual Cplx density_ab(double x, double t) const = 0;

    virtual double interval_aa(double t, double lo, double hi) const = 0;
    virtual double interval_bb(double t, double lo, double hi) const = 0;
    virtual Cplx interval_ab(double t, double lo, double hi) const = 0;

    virtual Moments moments_aa(double t) const = 0;
    virtual Moments moments_bb(double t) const = 0;
    virtual Moments moments_ab(double t) const = 0;
};

/// Pure-state pair: wavefunction-level access, needed for currents, point
/// detectors and joint densities. Covers CK packets and slit superpositions.
class PureStatePair {
public:
    using Factory = std::function<GaussianSum(double t)>;

    /// t_ref: any time at which both states are defined (overlaps are
    /// time-invariant, so one evaluation suffices).
    PureStatePair(Factory psi, Factory phi, Environment env, double t_ref = 0.0);

    GaussianSum psi(double t) const { return psi_(t); }
    GaussianSum phi(double t) const { return phi_(t); }

    /// <psi|phi> = integral of conj(psi) phi
    Cplx overlap_psi_phi() const { return overlap_; }
    const Environment& env() const { return env_; }

private:
    Factory psi_, phi_;
    Environment env_;
    Cplx overlap_;
};

/// Pair of CK-evolved Gaussian packets as a pure-state pair.
PureStatePair make_ck_pair(const GaussianPacket& a, const GaussianPacket& b,
                           const Environment& env);

/// PairKernel backed by an arbitrary pure-state pair.
class PureKernel : public PairKernel {
public:
    explicit PureKernel(PureStatePair states) : states_(std::move(states)) {}

    const PureStatePair& states() const { return states_; }

    Cplx overlap() const override { return std::conj(states_.overlap_psi_phi()); }
    double density_aa(double x, double t) const override;
    double density_bb(double x, double t) const override;
    Cplx density_ab(double x, double t) const override;
    double interval_aa(double t, double lo, double hi) const override;
    double interval_bb(double t, double lo, double hi) const override;
    Cplx interval_ab(double t, double lo, double hi) const override;
    Moments moments_aa(double t) const override;
    Moments moments_bb(double t) const override;
    Moments moments_ab(double t) const override;

private:
    PureStatePair states_;
};

/// PairKernel backed by the closed-form CL diagonal densities.
class CLKernel : public PairKernel {
public:
    CLKernel(GaussianPacket a, GaussianPacket b, Environment env);

    Cplx overlap() const override { return overlap_; }
    double density_aa(double x, double t) const override;
    double density_bb(double x, double t) const override;
    Cplx density_ab(double x, double t) const override;
    double interval_aa(double t, double lo, double hi) const override;
    double interval_bb(double t, double lo, double hi) const override;
    Cplx interval_ab(double t, double lo, double hi) const override;
    Moments moments_aa(double t) const override;
    Moments moments_bb(double t) const override;
    Moments moments_ab(double t) const override;

private:
    GaussianPacket a_, b_;
    Environment env_;
    Cplx overlap_;
};

/// N_+- = 1 / sqrt(2 (1 +- |overlap|^2)); 1/sqrt(2) for MB.
/// Throws PauliExclusion for FD states with 1 - |overlap|^2 < 1e-12.
double symmetrized_norm(Statistics stats, Cplx overlap);

/// Mean square separation <(x1 - x2)^2> of the (anti)symmetrized pair.
double mss(Statistics stats, const PairKernel& kernel, double t);

/// Ratio of the simultaneous detection probability in [-d, d] to the MB one.
double detection_ratio_single(Statistics stats, const PairKernel& kernel, double t, double d);

/// Two detectors of half-width d at +-D; CK (pure-state) backend only.
double detection_ratio_double(Statistics stats, const PureStatePair& states, double t, double D,
                              double d);

/// Point-detector limit of the two-detector scheme.
double detection_ratio_point(Statistics stats, const PureStatePair& states, double t, double D);

/// Single-particle (reduced) probability density.
double sp_density(Statistics stats, const PairKernel& kernel, double x, double t);

/// Single-particle probability current; carries the e^{-2 gamma t} factor.
double sp_current(Statistics stats, const PureStatePair& states, double x, double t);

/// |Psi(x1, x2, t)|^2 of the symmetrized state (or the MB mixture).
double joint_density(Statistics stats, const PureStatePair& states, double x1, double x2,
                     double t);

}  // namespace dissipair
