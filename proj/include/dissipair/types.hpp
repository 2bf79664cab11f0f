#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dissipair {

using Cplx = std::complex<double>;

/// Initial one-particle Gaussian: center x0, kick momentum p0, width sigma0 > 0.
struct GaussianPacket {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma0 = 1.0;
};

/// Physical constants and bath parameters. kBT is used only by the CL backend.
struct Environment {
    double hbar = 1.0;
    double m = 1.0;
    double gamma = 0.0;
    double kBT = 0.0;
};

/// Zeroth, first and second moments of a (possibly complex) density.
struct Moments {
    Cplx m0, m1, m2;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input outside the validated numerical domain (non-finite, divergent, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Closed form not available for the requested geometry (e.g. distinct centers).
struct UnsupportedGeometry : Error {
    using Error::Error;
};

/// Antisymmetric two-particle state vanishes (|overlap| -> 1 for fermions).
struct PauliExclusion : Error {
    using Error::Error;
};

/// Detector placed where all probability mass has underflowed.
struct DegenerateDetector : Error {
    using Error::Error;
};

/// Point detector sits on a node of a one-particle wavefunction.
struct NodeAtDetector : Error {
    using Error::Error;
};

/// Square-root branch left the validated half plane; indicates a model bug.
struct BranchError : Error {
    using Error::Error;
};

/// Spectral grid no longer resolves the state (boundary decay violated).
struct AliasError : Error {
    using Error::Error;
};

/// Adaptive refinement hit its depth limit without meeting the tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

inline void require_finite(Cplx z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(what) + ": non-finite value");
}

}  // namespace dissipair
