#pragma once

#include <functional>
#include <string>

#include "curs/manifold.hpp"
#include "curs/radial.hpp"
#include "curs/rng.hpp"

namespace curs {

/// Surface area of the dim-dimensional unit sphere embedded in R^{dim+1}:
/// 2 pi^{(dim+1)/2} / Gamma((dim+1)/2).
double surface_area(int dim);

/**
 * Proposal normalizing constant Z_kappa for the Gaussian law (alpha = 2):
 *
 *   Z_kappa(sigma) = sigma Omega_{d-1} / (2 kappa)^{d-1}
 *                    * sum_j (-1)^j C(d-1, j) Phi(b_j) / phi(b_j),
 *   b_j = (d - 1 - 2j) kappa sigma.
 *
 * The alternating sum cancels down to roughly (2 kappa sigma)^{d-1} times its
 * largest term, which is far past double precision for small sigma, so it is
 * evaluated in 50-digit floating point and only the final value is rounded.
 *
 * Throws UnsupportedClosedForm unless the law is a generalized Gaussian with
 * alpha = 2.
 */
double z_kappa_closed(const GeometrySpec& geom, const RadialLaw& law);

/**
 * The same constant by adaptive Simpson quadrature of
 * Omega_{d-1} integral of f(r) (kappa^{-1} sinh kappa r)^{d-1} dr, valid for
 * any integrable law. For the unitary group (kappa = 0) this is the truncated
 * proposal constant Omega_{d-1} integral over (0, sqrt(N) pi) of f(r) r^{d-1}.
 * The integrand is evaluated as exp(l(r) - max l) so nothing overflows.
 */
double z_kappa_quad(const GeometrySpec& geom, const RadialLaw& law);

/**
 * Target normalizing constant for the real positive definite family with a
 * Gaussian law, even N only:
 *
 *   Z(sigma) = (pi sigma^2/2)^{N/2} 2^{N(N-1)/4} prod_{j=1..N} Omega_{j-1}
 *              * exp(-N(N-1)^2 sigma^2/8) Pf(Lambda(sigma)),
 *   Lambda_ij = exp((i^2+j^2) sigma^2/2) erf((j-i) sigma/2), 0 <= i,j < N.
 *
 * Throws OddN for odd N (no closed form is provided; use z_target_mc).
 */
double z_target_spd(int n, double sigma);

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

/**
 * Monte Carlo target constant for any supported geometry and law: uniform
 * sphere directions, each paired with a log-domain radial quadrature of
 * f(r) |det A(r, s)| out to a 1e-14 relative tail (positive definite) or to
 * c(s) (unitary). Returns Omega_{d-1} times the direction average.
 */
McEstimate z_target_mc(const GeometrySpec& geom, const RadialLaw& law, int sphere_draws, Rng& rng);

/**
 * Expected squared distance delta = sigma^3 (log Z)'(sigma) for the real
 * positive definite family, even N, Gaussian law. The derivative is a central
 * difference with step 1e-4 sigma plus one Richardson extrapolation pass.
 */
double delta_of_sigma(int n, double sigma);

/**
 * Independent volume-density oracle: integrates the Jacobi equation
 * A'' + R A = 0, A(0) = 0, A'(0) = I with the constant curvature matrix R
 * diagonalized analytically (eigenvalue 0 with multiplicity N-1, and
 * -kappa_ij^2 with multiplicity beta for the positive definite family,
 * +kappa_ij^2 with multiplicity 2 for the unitary group), by classical
 * Runge-Kutta with `steps` substeps per scalar component. Returns
 * log |det A(r, s)| for comparison against the closed-form density.
 */
double jacobi_ode_det(const GeometrySpec& geom, double r, const Direction& dir, int steps);

/// Closed-form constants bundle for reporting.
struct TheoryConstants {
    double z = 0.0;
    double z_kappa = 0.0;
    double pi = 0.0;
    double delta = 0.0;
    double z_stderr = 0.0;  // zero for closed forms
    std::string z_method;
    std::string z_kappa_method;
    std::string delta_method;
};

/// Z, Z_kappa, Pi, delta for the real positive definite family with a
/// Gaussian law; closed forms throughout, so N must be even.
TheoryConstants spd_theory(int n, double sigma);

/// Log-domain radial integral helper: returns log of the integral of
/// exp(ell(r)) over (lo, hi), hi = +infinity meaning integrate until the
/// integrand has fallen 1e-14 relative below its peak. Exposed for oracle
/// tests and the CLI.
double log_radial_integral(const std::function<double(double)>& ell, double lo, double hi);

}  // namespace curs
