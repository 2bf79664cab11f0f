#pragma once

#include <functional>
#include <vector>

#include "dissipair/types.hpp"

// Independent numerical ground truth for the closed forms: adaptive
// quadrature, spectral grid evolution in rescaled time, and the exact
// first/second-moment ODEs of the dissipative master equation.
namespace dissipair::oracle {

using Integrand = std::function<Cplx(double)>;

/// Adaptive Gauss-Legendre (10/21 node pair) refinement; infinite endpoints
/// handled by double-exponential substitution. Throws NoConvergence past the
/// depth limit.
Cplx adaptive_quadrature(const Integrand& f, double lo, double hi, double tol = 1e-12);

/// Nested 2D quadrature of f(x1, x2) over [lo1,hi1] x [lo2,hi2].
Cplx adaptive_quadrature_2d(const std::function<Cplx(double, double)>& f, double lo1, double hi1,
                            double lo2, double hi2, double tol = 1e-9);

struct Grid1D {
    double x_min, x_max;
    std::vector<Cplx> values;  // n is a power of two, n >= 256

    double dx() const { return (x_max - x_min) / static_cast<double>(values.size()); }
    double x(std::size_t j) const { return x_min + dx() * static_cast<double>(j); }
    double norm() const;  // discrete L2 norm integral
};

/// Sample a wavefunction onto a uniform grid.
Grid1D make_grid(const std::function<Cplx(double)>& f, double x_min, double x_max, std::size_t n);

/// Free propagation from t_from to t_to: spectral phase in rescaled time,
/// exact in time for V = 0. Throws AliasError if the state touches the
/// boundary (relative amplitude above 1e-12).
Grid1D grid_evolve_ck(const Grid1D& initial, double t_from, double t_to, const Environment& env);

/// Multiply by the Gaussian aperture exp(-(x - X)^2 / (2 w^2)) and
/// renormalize; the grid half of the slit construction.
void apply_gaussian_aperture(Grid1D& grid, double X, double w);

/// First and second moments of a one-particle Gaussian state under friction
/// and diffusion.
struct MomentState {
    double mean_x, mean_p;
    double var_xx, cov_xp, var_pp;
};

/// RK4 integration of the exact moment ODEs from the Gaussian initial
/// moments of `packet`; step size chosen for ~1e-10 local error.
MomentState cl_moment_ode(const GaussianPacket& packet, double t, const Environment& env,
                          double dt = 5e-4);

}  // namespace dissipair::oracle
