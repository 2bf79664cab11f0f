#pragma once

#include <vector>

#include "dissipair/types.hpp"

namespace dissipair {

/// amp * exp(-c2 x^2 + c1 x + c0)
struct GaussianTerm {
    Cplx amp{1.0};
    Cplx c0{0.0};
    Cplx c1{0.0};
    Cplx c2{0.0};

    Cplx value(double x) const;
    Cplx derivative(double x) const;
};

/// Finite linear combination of Gaussian terms (e.g. a two-slit superposition).
struct GaussianSum {
    std::vector<GaussianTerm> terms;

    GaussianSum() = default;
    GaussianSum(std::initializer_list<GaussianTerm> ts) : terms(ts) {}

    Cplx value(double x) const;
    Cplx derivative(double x) const;
    GaussianSum& scale(Cplx f);
};

/// integral over [lo, hi] of conj(f(x)) * g(x); exact via erf.
Cplx pair_integral(const GaussianSum& f, const GaussianSum& g, double lo, double hi);

/// Full-line moments of conj(f(x)) * g(x): m_n = integral of x^n conj(f) g.
Moments pair_moments(const GaussianSum& f, const GaussianSum& g);

/// integral over the real line of |f(x)|^2.
double norm_integral(const GaussianSum& f);

}  // namespace dissipair
