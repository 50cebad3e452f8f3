#include "curs/engine.hpp"

#include <cmath>
#include <iostream>
#include <thread>
#include <vector>

namespace curs {

namespace {

RadialProposal make_proposal(const CursConfig& cfg) {
    const GeometrySpec& g = cfg.geom;
    switch (cfg.variant) {
        case Variant::General:
            // Comparison-bound proposal f(r) (kappa^{-1} sinh kappa r)^{d-1}.
            return RadialProposal::hyperbolic(cfg.law, {{g.kappa, static_cast<double>(g.dim - 1)}});
        case Variant::Sharp:
            // Tighter bound r^{N-1} (kappa^{-1} sinh kappa r)^{d-N} accounting
            // for the N-1 flat tangent directions.
            return RadialProposal::hyperbolic(
                cfg.law, {{0.0, static_cast<double>(g.n - 1)}, {g.kappa, static_cast<double>(g.dim - g.n)}});
        case Variant::CutLocus:
            // Flat bound r^{d-1} truncated at the diameter.
            return RadialProposal::power_law(cfg.law, static_cast<double>(g.dim - 1), g.diameter);
    }
    throw InvalidConfig("make_proposal: unknown variant");
}

}  // namespace

void validate_config(const CursConfig& cfg) {
    const bool spd = cfg.geom.kind == Kind::Spd;
    if (cfg.variant == Variant::CutLocus && spd)
        throw InvalidConfig("cut-locus sampling applies to the unitary group only");
    if (cfg.variant != Variant::CutLocus && !spd)
        throw InvalidConfig("general and sharp sampling apply to the positive definite family only");
    if (spd && cfg.geom.beta == 4)
        throw InvalidConfig("beta = 4 supports density evaluation only, not sampling");
    if (cfg.base.x.n != cfg.geom.n) throw InvalidConfig("base point size does not match the geometry");
}

double log_accept_ratio(const GeometrySpec& geom, Variant variant, double r, const Direction& dir) {
    const int n = geom.n;
    double sum = 0.0;
    if (variant == Variant::CutLocus) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double kij = 0.5 * (dir.sigma[i] - dir.sigma[j]);
                sum += 2.0 * std::log(std::abs(sinc(kij * r)));
            }
        return sum;
    }
    const double log_ref = log_sinch(geom.kappa * r);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double kij = 0.5 * (dir.sigma[i] - dir.sigma[j]);
            sum += log_sinch(kij * r) - log_ref;
        }
    sum *= geom.beta;
    if (variant == Variant::General) sum -= (n - 1) * log_ref;
    return sum;
}

CursSampler::CursSampler(const CursConfig& cfg) : cfg_(cfg) {
    validate_config(cfg_);
    proposal_ = make_proposal(cfg_);
}

bool CursSampler::round(Rng& rng, double& r, Direction& dir) {
    dir = sample_direction(cfg_.geom, rng);
    if (cfg_.variant == Variant::CutLocus) {
        r = sample_truncated_general(proposal_, rng);
        if (r >= cut_function(cfg_.geom, dir)) return false;
    } else {
        r = sample_log_concave(proposal_, rng);
    }
    const double ratio = log_accept_ratio(cfg_.geom, cfg_.variant, r, dir);
    return std::log(rng.uniform()) <= ratio;
}

SphericalSample CursSampler::sample(Rng& rng) {
    double r = 0.0;
    Direction dir;
    for (std::uint64_t it = 1; it <= cfg_.budget; ++it) {
        if (round(rng, r, dir)) return SphericalSample{r, std::move(dir), it};
        if (it == 1000000 && !warned_) {
            warned_ = true;
            // Rule of three: zero accepts in n rounds bounds the acceptance
            // probability below 3/n at 95% confidence.
            std::cerr << "curs: no acceptance after 1e6 rounds; acceptance probability"
                         " is likely below 3e-6\n";
        }
    }
    throw IterationBudgetExceeded("curs_sample: no acceptance within the round budget");
}

SphericalSample curs_sample(const CursConfig& cfg, Rng& rng) {
    CursSampler sampler(cfg);
    return sampler.sample(rng);
}

std::pair<Point, SphericalSample> curs_point(const CursConfig& cfg, Rng& rng) {
    CursSampler sampler(cfg);
    SphericalSample s = sampler.sample(rng);
    Point p = exp_map(cfg.geom, s.r, s.dir, cfg.base);
    return {std::move(p), std::move(s)};
}

AcceptanceStats estimate_acceptance(const CursConfig& cfg, std::uint64_t rounds, Rng& rng) {
    CursSampler sampler(cfg);
    std::uint64_t accepts = 0;
    double r = 0.0;
    Direction dir;
    for (std::uint64_t it = 0; it < rounds; ++it)
        if (sampler.round(rng, r, dir)) ++accepts;
    AcceptanceStats st;
    st.trials = rounds;
    st.accepts = accepts;
    st.pi_hat = static_cast<double>(accepts) / static_cast<double>(rounds);
    st.stderr_ = std::sqrt(st.pi_hat * (1.0 - st.pi_hat) / static_cast<double>(rounds));
    return st;
}

AcceptanceStats estimate_acceptance_parallel(const CursConfig& cfg, std::uint64_t rounds, int threads) {
    if (threads <= 1) {
        Rng rng(cfg.seed);
        return estimate_acceptance(cfg, rounds, rng);
    }
    std::vector<std::uint64_t> accepts(threads, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        // Even share, with the remainder spread over the first workers.
        const std::uint64_t share = rounds / threads + (static_cast<std::uint64_t>(w) < rounds % threads ? 1 : 0);
        pool.emplace_back([&cfg, &accepts, w, share]() {
            Rng rng = Rng::worker_stream(cfg.seed, static_cast<std::uint64_t>(w));
            CursSampler sampler(cfg);
            std::uint64_t acc = 0;
            double r = 0.0;
            Direction dir;
            for (std::uint64_t it = 0; it < share; ++it)
                if (sampler.round(rng, r, dir)) ++acc;
            accepts[w] = acc;
        });
    }
    for (std::thread& t : pool) t.join();
    std::uint64_t total = 0;
    for (std::uint64_t a : accepts) total += a;
    AcceptanceStats st;
    st.trials = rounds;
    st.accepts = total;
    st.pi_hat = static_cast<double>(total) / static_cast<double>(rounds);
    st.stderr_ = std::sqrt(st.pi_hat * (1.0 - st.pi_hat) / static_cast<double>(rounds));
    return st;
}

}  // namespace curs
