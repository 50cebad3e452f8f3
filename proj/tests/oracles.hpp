#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "curs/numkern.hpp"
#include "curs/rng.hpp"

namespace oracles {

/// One-sample Kolmogorov-Smirnov statistic against an exact CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double stat = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        stat = std::max(stat, std::abs(f - i / n));
        stat = std::max(stat, std::abs((i + 1) / n - f));
    }
    return stat;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double stat = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        stat = std::max(stat, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return stat;
}

/// Asymptotic Kolmogorov tail probability Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
inline double kolmogorov_q(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12 * std::abs(sum)) break;
        sign = -sign;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

/// p-value for a one-sample KS statistic at sample size n.
inline double ks_p_value(double stat, double n_eff) {
    const double root = std::sqrt(n_eff);
    return kolmogorov_q(stat * (root + 0.12 + 0.11 / root));
}

/// p-value for a two-sample KS statistic with sizes n and m.
inline double ks_two_sample_p(double stat, double n, double m) {
    return ks_p_value(stat, n * m / (n + m));
}

/**
 * Tabulated CDF of an unnormalized log density on [lo, hi], built by Simpson
 * integration on a uniform grid. Evaluation interpolates linearly between the
 * grid CDF values, which keeps errors well below 1e-4 at the default size.
 */
struct QuadCdf {
    std::vector<double> r;
    std::vector<double> cum;

    double operator()(double x) const {
        if (x <= r.front()) return 0.0;
        if (x >= r.back()) return 1.0;
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - r.begin()) - 1;
        const double t = (x - r[k]) / (r[k + 1] - r[k]);
        return cum[k] + t * (cum[k + 1] - cum[k]);
    }
};

inline QuadCdf make_quad_cdf(const std::function<double(double)>& log_dens, double lo, double hi,
                             int intervals = 16384) {
    QuadCdf out;
    out.r.resize(intervals + 1);
    out.cum.assign(intervals + 1, 0.0);
    const double h = (hi - lo) / intervals;
    double shift = -1e308;
    std::vector<double> ld(2 * intervals + 1);
    for (int i = 0; i <= 2 * intervals; ++i) {
        ld[i] = log_dens(lo + 0.5 * h * i);
        shift = std::max(shift, ld[i]);
    }
    const auto dens = [&](int half_idx) {
        const double v = ld[half_idx] - shift;
        return v < -745.0 ? 0.0 : std::exp(v);
    };
    out.r[0] = lo;
    for (int k = 0; k < intervals; ++k) {
        out.r[k + 1] = lo + (k + 1) * h;
        const double seg = h / 6.0 * (dens(2 * k) + 4.0 * dens(2 * k + 1) + dens(2 * k + 2));
        out.cum[k + 1] = out.cum[k] + seg;
    }
    const double total = out.cum.back();
    if (!(total > 0.0)) throw std::runtime_error("make_quad_cdf: zero mass");
    for (double& c : out.cum) c /= total;
    return out;
}

/// Haar-distributed unitary matrix: QR of a Ginibre draw. Modified
/// Gram-Schmidt produces the unique R with positive real diagonal, which is
/// exactly the convention under which Q is Haar; no extra phase fix needed.
inline curs::Mat haar_unitary(int n, curs::Rng& rng) {
    const double inv_sqrt2 = 0.7071067811865475244;
    curs::Mat z(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            z(i, j) = curs::cplx(rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2);
    curs::Mat q(n);
    for (int k = 0; k < n; ++k) {
        std::vector<curs::cplx> col(n);
        for (int i = 0; i < n; ++i) col[i] = z(i, k);
        for (int prev = 0; prev < k; ++prev) {
            curs::cplx proj = 0.0;
            for (int i = 0; i < n; ++i) proj += std::conj(q(i, prev)) * col[i];
            for (int i = 0; i < n; ++i) col[i] -= proj * q(i, prev);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(col[i]);
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) q(i, k) = col[i] / norm;
    }
    return q;
}

}  // namespace oracles
