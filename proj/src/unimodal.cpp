#include "unimodal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "curs/errors.hpp"

namespace curs::detail {

double locate_mode(const std::function<double(double)>& ell) {
    // Geometric scan from well below any practical length scale. The scan
    // stops once the function has fallen 30 below its running maximum, which
    // for a concave function means the mode has been bracketed.
    std::vector<double> rs;
    std::vector<double> vs;
    double best = -1e308;
    int best_idx = -1;
    for (int k = 0;; ++k) {
        const double r = 1e-9 * std::pow(2.0, k);
        const double v = ell(r);
        rs.push_back(r);
        vs.push_back(v);
        if (v >= best) {
            best = v;
            best_idx = k;
        }
        if (v < best - 30.0 && k > best_idx) break;
        if (r > 1e6 && best_idx == k)
            throw NotIntegrable("locate_mode: log density is nondecreasing beyond r = 1e6");
        if (r > 1e9) break;
    }

    double lo = (best_idx == 0) ? 1e-12 : rs[best_idx - 1];
    double hi = (best_idx + 1 < static_cast<int>(rs.size())) ? rs[best_idx + 1] : rs.back() * 2.0;

    // Golden-section search; the interval shrinks by the golden ratio each
    // iteration, so 140 iterations push far below the requested tolerance.
    const double inv_phi = 0.61803398874989484820;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = ell(x1);
    double f2 = ell(x2);
    for (int it = 0; it < 140; ++it) {
        if (hi - lo < 1e-11 * std::max(1.0, hi)) break;
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = ell(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = ell(x1);
        }
    }
    return 0.5 * (lo + hi);
}

double find_drop_right(const std::function<double(double)>& ell, double mode, double peak, double drop) {
    double step = std::max(mode, 1.0) * 0.5;
    double hi = mode + step;
    while (ell(hi) > peak - drop) {
        step *= 2.0;
        hi = mode + step;
        if (step > 1e9) throw NotIntegrable("find_drop_right: log density never drops");
    }
    double lo = std::max(mode, hi - step);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (ell(mid) > peak - drop)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace curs::detail
