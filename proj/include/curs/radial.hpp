#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "curs/errors.hpp"
#include "curs/rng.hpp"

namespace curs {

/**
 * Radial profile f(r) of a target density that depends only on distance.
 */
struct RadialLaw {
    enum class Kind { GeneralizedGaussian, Uniform, Custom };

    Kind kind = Kind::Uniform;
    double alpha = 2.0;
    double sigma = 1.0;
    std::function<double(double)> custom_log_f;
    bool log_concave = true;

    /// log f(r) = -r^alpha / (2 sigma^2). Requires alpha > 1 and sigma > 0;
    /// violations raise DomainError at construction.
    static RadialLaw generalized_gaussian(double alpha, double sigma);

    /// f identically 1 (meaningful only with a truncated proposal shape).
    static RadialLaw uniform();

    static RadialLaw custom(std::function<double(double)> log_f, bool log_concave);

    /// log f(r); DomainError for r <= 0.
    double log_f(double r) const;
};

/// One factor (r sinch(rate r))^power of a proposal's geometric part.
/// rate = 0 degenerates to a pure power r^power since sinch(0) = 1.
struct ExponentPair {
    double rate = 0.0;
    double power = 0.0;
};

/**
 * Unnormalized radial proposal g(r) on (0, infinity):
 *
 *   Hyperbolic: log g(r) = log f(r) + sum_k power_k log(r sinch(rate_k r))
 *   PowerLaw:   log g(r) = log f(r) + power log r, truncated at r = truncation
 *
 * A single Hyperbolic pair (kappa, d-1) reproduces the comparison-bound
 * proposal f(r) (kappa^{-1} sinh kappa r)^{d-1}; the mixed pair list
 * {(0, N-1), (kappa, d-N)} gives the sharper variant's proposal.
 *
 * Objects are immutable after construction; the rejection envelope (and, for
 * heavily truncated laws, an inverse-CDF table) is cached at build time.
 */
struct RadialProposal {
    enum class Shape { Hyperbolic, PowerLaw };

    RadialLaw law;
    Shape shape = Shape::Hyperbolic;
    std::vector<ExponentPair> pairs;
    double power = 0.0;
    double truncation = std::numeric_limits<double>::infinity();

    // Envelope for the universal log-concave sampler: flat on [lo, hi] around
    // the mode, exponential tails beyond, all relative to log g(mode).
    struct Envelope {
        double mode = 0.0;
        double log_peak = 0.0;
        double lo = 0.0;      // left drop-by-1 point, 0 when the flat piece reaches the origin
        double hi = 0.0;      // right drop-by-1 point
        double mass_left = 0.0;
        double mass_flat = 0.0;
        double mass_right = 0.0;
    };
    Envelope env;
    bool has_envelope = false;

    // Inverse-CDF table for truncated proposals whose untruncated mass would
    // mostly be rejected.
    std::vector<double> table_r;
    std::vector<double> table_cdf;
    std::vector<double> table_dens;
    double table_h = 0.0;
    bool has_table = false;
    double mass_beyond = 0.0;  // untruncated proposal mass past the truncation

    /// Throws NotLogConcave when the law's concavity flag is false and
    /// NotIntegrable when log g keeps growing out to r = 1e6.
    static RadialProposal hyperbolic(RadialLaw law, std::vector<ExponentPair> pairs);

    /// Truncated power-law shape; power is the density exponent (d - 1).
    static RadialProposal power_law(RadialLaw law, double power, double truncation);
};

/// Unnormalized log g(r). DomainError for r <= 0; -infinity past a truncation.
double log_g(const RadialProposal& proposal, double r);

/**
 * Exact sample from the normalized g via the universal log-concave rejection
 * scheme: the envelope is flat between the two points where log g has dropped
 * by 1 from its mode and exponential beyond them, which dominates any concave
 * log density. Every evaluation stays in the log domain.
 */
double sample_log_concave(const RadialProposal& proposal, Rng& rng);

/// Inverse CDF of the truncated power law: delta * u^{1/power}; power is the
/// CDF exponent, one more than the density exponent.
double truncated_power_quantile(double power, double delta, double u);

/// Exact inverse-CDF sample r = delta * U^{1/power} on (0, delta); power is
/// the CDF exponent, one more than the density exponent.
double sample_truncated_power(double power, double delta, Rng& rng);

/**
 * Exact sample from g restricted to (0, truncation). Uniform laws dispatch to
 * the analytic power-law inverse CDF; integrable laws rejection-sample the
 * untruncated g and discard r past the truncation; laws with more than half
 * their untruncated mass past the truncation fall back to the cached
 * quadrature inverse-CDF table.
 */
double sample_truncated_general(const RadialProposal& proposal, Rng& rng);

}  // namespace curs
