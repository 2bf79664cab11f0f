#include "dissipair/gaussian_sum.hpp"

#include <cmath>
#include <limits>

#include "dissipair/special.hpp"

namespace dissipair {

Cplx GaussianTerm::value(double x) const {
    return amp * std::exp(c0 + (c1 - c2 * x) * x);
}

Cplx GaussianTerm::derivative(double x) const {
    return (c1 - 2.0 * c2 * x) * value(x);
}

Cplx GaussianSum::value(double x) const {
    Cplx v = 0.0;
    for (const auto& t : terms) v += t.value(x);
    return v;
}

Cplx GaussianSum::derivative(double x) const {
    Cplx v = 0.0;
    for (const auto& t : terms) v += t.derivative(x);
    return v;
}

GaussianSum& GaussianSum::scale(Cplx f) {
    for (auto& t : terms) t.amp *= f;
    return *this;
}

Cplx pair_integral(const GaussianSum& f, const GaussianSum& g, double lo, double hi) {
    Cplx total = 0.0;
    for (const auto& tf : f.terms)
        for (const auto& tg : g.terms) {
            const Cplx amp = std::conj(tf.amp) * tg.amp;
            total += amp * gaussian_interval_integral(std::conj(tf.c2) + tg.c2,
                                                      std::conj(tf.c1) + tg.c1,
                                                      std::conj(tf.c0) + tg.c0, lo, hi);
        }
    return total;
}

Moments pair_moments(const GaussianSum& f, const GaussianSum& g) {
    Moments total{0.0, 0.0, 0.0};
    for (const auto& tf : f.terms)
        for (const auto& tg : g.terms) {
            const Cplx amp = std::conj(tf.amp) * tg.amp;
            const Moments m = gaussian_moments(std::conj(tf.c2) + tg.c2,
                                               std::conj(tf.c1) + tg.c1,
                                               std::conj(tf.c0) + tg.c0);
            total.m0 += amp * m.m0;
            total.m1 += amp * m.m1;
            total.m2 += amp * m.m2;
        }
    return total;
}

double norm_integral(const GaussianSum& f) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return pair_integral(f, f, -inf, inf).real();
}

}  // namespace dissipair
