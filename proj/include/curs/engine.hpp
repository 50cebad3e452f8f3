#pragma once

#include <cstdint>
#include <utility>

#include "curs/manifold.hpp"
#include "curs/radial.hpp"

namespace curs {

enum class Variant { General, Sharp, CutLocus };

/**
 * Accepted spherical coordinates plus the number of proposal rounds it took
 * to produce them.
 */
struct SphericalSample {
    double r = 0.0;
    Direction dir;
    std::uint64_t iterations = 0;
};

struct AcceptanceStats {
    std::uint64_t trials = 0;
    std::uint64_t accepts = 0;
    double pi_hat = 0.0;
    double stderr_ = 0.0;
};

struct CursConfig {
    GeometrySpec geom;
    RadialLaw law;
    Variant variant = Variant::General;
    Point base;
    std::uint64_t seed = 0;
    std::uint64_t budget = 100000000;  // proposal rounds before giving up
};

/// Throws InvalidConfig for unusable combinations: Sharp or General on the
/// unitary group, CutLocus on the positive definite family, beta = 4.
void validate_config(const CursConfig& cfg);

/**
 * Log of the variant's acceptance ratio at (r, s); a draw is accepted when
 * log U <= this value. All three ratios are sums over the pair curvatures
 * kappa_ij = (sigma_i - sigma_j)/2 and never exceed 0:
 *
 *   General:  beta sum log(sinch(kappa_ij r)/sinch(kappa r)) - (N-1) log sinch(kappa r)
 *   Sharp:    beta sum log(sinch(kappa_ij r)/sinch(kappa r))
 *   CutLocus: 2 sum log |sinc(kappa_ij r)|
 */
double log_accept_ratio(const GeometrySpec& geom, Variant variant, double r, const Direction& dir);

/**
 * One rejection-sampling run. Each round draws a fresh direction, a fresh
 * radius from the variant's proposal, and a fresh uniform; on rejection
 * everything is redrawn, which is what makes the accepted pair carry the
 * curvature-weighted angular law rather than the uniform proposal law.
 *
 * Construct once and reuse: the radial proposal's envelope is built here.
 */
class CursSampler {
public:
    explicit CursSampler(const CursConfig& cfg);

    /// Runs proposal rounds until one is accepted.
    /// Throws IterationBudgetExceeded after cfg.budget rejected rounds; emits
    /// a one-time warning with a rule-of-three bound on the acceptance
    /// probability after 1e6 consecutive rejections.
    SphericalSample sample(Rng& rng);

    /// One proposal round; returns acceptance and leaves (r, dir) filled.
    bool round(Rng& rng, double& r, Direction& dir);

    const RadialProposal& proposal() const { return proposal_; }

private:
    CursConfig cfg_;
    RadialProposal proposal_;
    bool warned_ = false;
};

/// Convenience wrappers constructing a sampler per call.
SphericalSample curs_sample(const CursConfig& cfg, Rng& rng);

/// Accepted sample pushed through the exponential map at cfg.base.
std::pair<Point, SphericalSample> curs_point(const CursConfig& cfg, Rng& rng);

/// Runs exactly `rounds` proposal rounds and counts acceptances. A cut-locus
/// round discarded because r reached c(s) counts as a rejection.
AcceptanceStats estimate_acceptance(const CursConfig& cfg, std::uint64_t rounds, Rng& rng);

/// Same estimate sharded across `threads` workers with independent streams
/// derived from (cfg.seed, worker index). Deterministic for a fixed seed and
/// thread count; the merge is a plain sum, so worker completion order never
/// matters.
AcceptanceStats estimate_acceptance_parallel(const CursConfig& cfg, std::uint64_t rounds, int threads);

}  // namespace curs
