#pragma once

#include "dissipair/types.hpp"

namespace dissipair {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
/// Rational series in the upper half plane; lower half via the reflection
/// identity w(z) = 2 exp(-z^2) - w(-z).
Cplx faddeeva_w(Cplx z);

/// Error function of complex argument.
/// Validated for |Re z| <= 30 and |Im z| <= 30; relative accuracy ~1e-13.
/// Throws DomainError outside that box or when the result overflows.
Cplx erf_complex(Cplx z);

/// Integral of exp(-a x^2 + b x + c) over [lo, hi] (endpoints may be +-inf).
/// Requires Re(a) > 0. Exact erf-based evaluation, principal branch of sqrt(a).
Cplx gaussian_interval_integral(Cplx a, Cplx b, Cplx c, double lo, double hi);

/// Full-line moments m_n = integral of x^n exp(-a x^2 + b x + c), n = 0, 1, 2.
Moments gaussian_moments(Cplx a, Cplx b, Cplx c);

}  // namespace dissipair
