#include "curs/radial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "curs/numkern.hpp"
#include "unimodal.hpp"

namespace curs {

namespace {

double hyperbolic_log_g(const RadialProposal& p, double r) {
    double out = p.law.log_f(r);
    const double logr = std::log(r);
    for (const ExponentPair& pair : p.pairs)
        out += pair.power * (logr + log_sinch(pair.rate * r));
    return out;
}

double untruncated_power_log_g(const RadialProposal& p, double r) {
    return p.law.log_f(r) + p.power * std::log(r);
}

// log g ignoring any truncation; the shape the rejection envelope is built on.
double open_log_g(const RadialProposal& p, double r) {
    return p.shape == RadialProposal::Shape::Hyperbolic ? hyperbolic_log_g(p, r)
                                                        : untruncated_power_log_g(p, r);
}

void build_envelope(RadialProposal& p) {
    const auto ell = [&p](double r) { return open_log_g(p, r); };
    const double mode = detail::locate_mode(ell);
    const double peak = ell(mode);

    RadialProposal::Envelope& e = p.env;
    e.mode = mode;
    e.log_peak = peak;
    e.hi = detail::find_drop_right(ell, mode, peak, 1.0);

    // Left drop-by-1 point; the flat piece reaches the origin when log g
    // never falls that far on (0, mode).
    if (ell(1e-12) >= peak - 1.0) {
        e.lo = 0.0;
    } else {
        double lo = 1e-12;
        double hi = mode;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (ell(mid) < peak - 1.0)
                lo = mid;
            else
                hi = mid;
        }
        e.lo = lo;
    }

    // Piece masses in units of g(mode). The tails are exponentials with the
    // chord slopes 1/(hi - mode) and 1/(mode - lo), which dominate any
    // concave log density beyond its drop-by-1 points.
    e.mass_flat = e.hi - e.lo;
    e.mass_right = std::exp(-1.0) * (e.hi - mode);
    if (e.lo > 0.0) {
        const double width = mode - e.lo;
        e.mass_left = width * (std::exp(-1.0) - std::exp(-mode / width));
    } else {
        e.mass_left = 0.0;
    }
    p.has_envelope = true;
}

// Composite-Simpson cumulative table of the truncated density, 2048 node
// pairs; used when rejection against the untruncated law would mostly miss.
void build_table(RadialProposal& p) {
    const int pairs = 2048;
    const int nodes = 2 * pairs + 1;
    const double h = p.truncation / (nodes - 1);
    std::vector<double> dens(nodes);
    double peak = -1e308;
    for (int i = 1; i < nodes; ++i) peak = std::max(peak, open_log_g(p, i * h));
    dens[0] = 0.0;  // limit value; the density vanishes or is finite at 0 and carries no mass
    for (int i = 1; i < nodes; ++i) dens[i] = std::exp(open_log_g(p, i * h) - peak);

    p.table_r.resize(pairs + 1);
    p.table_cdf.resize(pairs + 1);
    p.table_r[0] = 0.0;
    p.table_cdf[0] = 0.0;
    for (int j = 0; j < pairs; ++j) {
        const double seg = (h / 3.0) * (dens[2 * j] + 4.0 * dens[2 * j + 1] + dens[2 * j + 2]);
        p.table_r[j + 1] = (2 * j + 2) * h;
        p.table_cdf[j + 1] = p.table_cdf[j] + seg;
    }
    p.table_dens = std::move(dens);
    p.table_h = h;
    p.has_table = true;
}

// Mass of the untruncated proposal past the truncation radius, as a fraction
// of the whole, by composite Simpson on the log-shifted integrand.
double tail_fraction(const RadialProposal& p) {
    const auto ell = [&p](double r) { return open_log_g(p, r); };
    const double mode = detail::locate_mode(ell);
    const double peak = ell(mode);
    const double far = detail::find_drop_right(ell, mode, peak, 46.0);
    if (p.truncation >= far) return 0.0;

    const auto simpson = [&](double a, double b) {
        const int pairs = 4096;
        const double h = (b - a) / (2 * pairs);
        double s = 0.0;
        for (int j = 0; j < pairs; ++j) {
            const double r0 = a + 2 * j * h;
            const double f0 = (r0 <= 0.0) ? 0.0 : std::exp(ell(r0) - peak);
            const double f1 = std::exp(ell(r0 + h) - peak);
            const double f2 = std::exp(ell(r0 + 2 * h) - peak);
            s += (h / 3.0) * (f0 + 4.0 * f1 + f2);
        }
        return s;
    };
    const double head = simpson(0.0, p.truncation);
    const double tail = simpson(p.truncation, far);
    return tail / (head + tail);
}

}  // namespace

RadialLaw RadialLaw::generalized_gaussian(double alpha, double sigma) {
    if (!(alpha > 1.0)) throw DomainError("RadialLaw: need alpha > 1");
    if (!(sigma > 0.0)) throw DomainError("RadialLaw: need sigma > 0");
    RadialLaw law;
    law.kind = Kind::GeneralizedGaussian;
    law.alpha = alpha;
    law.sigma = sigma;
    law.log_concave = true;
    return law;
}

RadialLaw RadialLaw::uniform() {
    RadialLaw law;
    law.kind = Kind::Uniform;
    law.log_concave = true;
    return law;
}

RadialLaw RadialLaw::custom(std::function<double(double)> log_f, bool log_concave) {
    RadialLaw law;
    law.kind = Kind::Custom;
    law.custom_log_f = std::move(log_f);
    law.log_concave = log_concave;
    return law;
}

double RadialLaw::log_f(double r) const {
    if (r <= 0.0) throw DomainError("RadialLaw::log_f: need r > 0");
    switch (kind) {
        case Kind::GeneralizedGaussian:
            return -std::pow(r, alpha) / (2.0 * sigma * sigma);
        case Kind::Uniform:
            return 0.0;
        case Kind::Custom:
            return custom_log_f(r);
    }
    return 0.0;
}

RadialProposal RadialProposal::hyperbolic(RadialLaw law, std::vector<ExponentPair> pairs) {
    if (!law.log_concave)
        throw NotLogConcave("RadialProposal::hyperbolic: law is not log concave");
    RadialProposal p;
    p.law = std::move(law);
    p.shape = Shape::Hyperbolic;
    p.pairs = std::move(pairs);
    build_envelope(p);  // raises NotIntegrable for laws with a rising tail
    return p;
}

RadialProposal RadialProposal::power_law(RadialLaw law, double power, double truncation) {
    if (!(truncation > 0.0)) throw DomainError("RadialProposal::power_law: need truncation > 0");
    if (!law.log_concave)
        throw NotLogConcave("RadialProposal::power_law: law is not log concave");
    RadialProposal p;
    p.law = std::move(law);
    p.shape = Shape::PowerLaw;
    p.power = power;
    p.truncation = truncation;
    if (p.law.kind == RadialLaw::Kind::Uniform) return p;  // analytic inverse CDF, no caches

    p.mass_beyond = tail_fraction(p);
    if (p.mass_beyond > 0.5)
        build_table(p);
    else
        build_envelope(p);
    return p;
}

double log_g(const RadialProposal& proposal, double r) {
    if (r <= 0.0) throw DomainError("log_g: need r > 0");
    if (r >= proposal.truncation) return -std::numeric_limits<double>::infinity();
    return open_log_g(proposal, r);
}

double sample_log_concave(const RadialProposal& proposal, Rng& rng) {
    if (!proposal.law.log_concave)
        throw NotLogConcave("sample_log_concave: law is not log concave");
    if (!proposal.has_envelope)
        throw DomainError("sample_log_concave: proposal has no rejection envelope; use sample_truncated_general");

    const RadialProposal::Envelope& e = proposal.env;
    const double total = e.mass_left + e.mass_flat + e.mass_right;
    for (;;) {
        const double pick = rng.uniform() * total;
        double r;
        double env_log;  // envelope log height relative to the peak
        if (pick < e.mass_flat) {
            r = e.lo + rng.uniform() * (e.hi - e.lo);
            env_log = 0.0;
        } else if (pick < e.mass_flat + e.mass_right) {
            const double rate_width = e.hi - e.mode;
            r = e.hi - std::log(rng.uniform()) * rate_width;
            env_log = -(r - e.mode) / rate_width;
        } else {
            const double width = e.mode - e.lo;
            const double y0 = -e.mode / width;  // envelope exponent at the origin
            const double u = rng.uniform();
            const double y = -1.0 + std::log(u + (1.0 - u) * std::exp(y0 + 1.0));
            r = e.mode + y * width;
            env_log = y;
        }
        if (r <= 0.0) continue;
        const double lg = open_log_g(proposal, r) - e.log_peak;
        if (std::log(rng.uniform()) <= lg - env_log) return r;
    }
}

double truncated_power_quantile(double power, double delta, double u) {
    return delta * std::pow(u, 1.0 / power);
}

double sample_truncated_power(double power, double delta, Rng& rng) {
    return truncated_power_quantile(power, delta, rng.uniform());
}

double sample_truncated_general(const RadialProposal& proposal, Rng& rng) {
    if (!std::isfinite(proposal.truncation))
        return sample_log_concave(proposal, rng);

    if (proposal.shape == RadialProposal::Shape::PowerLaw &&
        proposal.law.kind == RadialLaw::Kind::Uniform) {
        // CDF exponent is the density exponent plus one.
        return sample_truncated_power(proposal.power + 1.0, proposal.truncation, rng);
    }

    if (proposal.has_table) {
        // Inverse CDF on the cached Simpson table: binary search for the node
        // pair, then bisection against the local parabolic cumulative.
        const double target = rng.uniform() * proposal.table_cdf.back();
        const auto it = std::upper_bound(proposal.table_cdf.begin(), proposal.table_cdf.end(), target);
        const std::size_t j = std::min<std::size_t>(
            proposal.table_cdf.size() - 2,
            static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - proposal.table_cdf.begin() - 1)));
        const double h = proposal.table_h;
        const double d0 = proposal.table_dens[2 * j];
        const double d1 = proposal.table_dens[2 * j + 1];
        const double d2 = proposal.table_dens[2 * j + 2];
        const double want = target - proposal.table_cdf[j];
        // Parabola through the three nodes, integrated in closed form.
        const double b = (4.0 * d1 - 3.0 * d0 - d2) / (2.0 * h);
        const double c = (d2 - 2.0 * d1 + d0) / (2.0 * h * h);
        const auto local_cdf = [&](double t) { return d0 * t + 0.5 * b * t * t + c * t * t * t / 3.0; };
        double lo = 0.0;
        double hi = 2.0 * h;
        for (int itb = 0; itb < 60; ++itb) {
            const double mid = 0.5 * (lo + hi);
            if (local_cdf(mid) < want)
                lo = mid;
            else
                hi = mid;
        }
        const double r = proposal.table_r[j] + 0.5 * (lo + hi);
        return std::min(std::max(r, 1e-300), proposal.truncation);
    }

    // Rejection against the untruncated law; exact for the restriction.
    for (;;) {
        const double r = sample_log_concave(proposal, rng);
        if (r < proposal.truncation) return r;
    }
}

}  // namespace curs
