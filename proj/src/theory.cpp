#include "curs/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "curs/numkern.hpp"
#include "unimodal.hpp"
#include "zkappa_mp.hpp"

namespace curs {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Adaptive Simpson on [a, b] for an integrand already scaled to peak near 1.
double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double m,
                        double fm, double b, double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

double surface_area(int dim) {
    if (dim < 0) throw DomainError("surface_area: need dim >= 0");
    const double half = 0.5 * (dim + 1);
    return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

double log_radial_integral(const std::function<double(double)>& ell, double lo, double hi) {
    double a = std::max(lo, 0.0);
    double b = hi;
    double shift;
    if (std::isfinite(b)) {
        // Bounded interval: the integrand may peak at either end, so take the
        // scale from a dense scan rather than assuming concavity. The scan
        // also clips the domain to the e^-60 neighbourhood of the peak so a
        // narrow bump is not lost inside a wide, empty interval.
        const int scan = 2048;
        std::vector<double> rs(scan), vs(scan);
        shift = -std::numeric_limits<double>::infinity();
        int peak_i = 0;
        for (int i = 0; i < scan; ++i) {
            rs[i] = a + (b - a) * (i + 1) / (scan + 1.0);
            vs[i] = ell(rs[i]);
            if (vs[i] > shift) {
                shift = vs[i];
                peak_i = i;
            }
        }
        int i_lo = peak_i;
        int i_hi = peak_i;
        while (i_lo > 0 && vs[i_lo - 1] > shift - 60.0) --i_lo;
        while (i_hi < scan - 1 && vs[i_hi + 1] > shift - 60.0) ++i_hi;
        if (i_lo > 0) a = rs[i_lo - 1];
        if (i_hi < scan - 1) b = rs[i_hi + 1];
    } else {
        const double mode = detail::locate_mode(ell);
        shift = ell(mode);
        b = detail::find_drop_right(ell, mode, shift, 60.0);  // e^-60 relative tail
        // Matching clip on the left when the bump detaches from the origin.
        double probe = std::min(1e-12, 0.5 * mode);
        if (probe > 0.0 && ell(probe) < shift - 60.0) {
            double below = probe;
            double above = mode;
            for (int it = 0; it < 200 && (above - below) > 1e-12 * above; ++it) {
                const double mid = 0.5 * (below + above);
                (ell(mid) < shift - 60.0 ? below : above) = mid;
            }
            a = below;
        }
    }

    const auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double v = ell(r) - shift;
        return (v < -745.0) ? 0.0 : std::exp(v);
    };

    // A coarse fixed-grid pass pins the scale for the adaptive tolerance; a
    // bare three-point estimate can miss the bump entirely, and a tolerance
    // orders of magnitude below the true integral forces the refinement into
    // exponential depth.
    const int panels = 256;
    const double h = (b - a) / panels;
    double coarse = f(a) + f(b);
    for (int i = 1; i < panels; ++i) coarse += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    coarse *= h / 3.0;
    const double scale = std::max(coarse, 1e-300);

    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double val =
        adaptive_simpson(f, a, fa, m, fm, b, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb),
                         1e-11 * scale, 48);
    return shift + std::log(val);
}

double z_kappa_closed(const GeometrySpec& geom, const RadialLaw& law) {
    if (law.kind != RadialLaw::Kind::GeneralizedGaussian || law.alpha != 2.0)
        throw UnsupportedClosedForm("z_kappa_closed: closed form needs the Gaussian law (alpha = 2)");
    if (geom.kind != Kind::Spd)
        throw UnsupportedClosedForm("z_kappa_closed: no closed form for the truncated unitary constant");
    return detail::z_kappa_closed_mp(geom.dim, geom.kappa, law.sigma);
}

double z_kappa_quad(const GeometrySpec& geom, const RadialLaw& law) {
    const int d = geom.dim;
    if (geom.kind == Kind::Spd) {
        const double kappa = geom.kappa;
        const auto ell = [&](double r) {
            return law.log_f(r) + (d - 1) * (std::log(r) + log_sinch(kappa * r));
        };
        const double log_i = log_radial_integral(ell, 0.0, std::numeric_limits<double>::infinity());
        return std::exp(std::log(surface_area(d - 1)) + log_i);
    }
    const auto ell = [&](double r) { return law.log_f(r) + (d - 1) * std::log(r); };
    const double log_i = log_radial_integral(ell, 0.0, geom.diameter);
    return std::exp(std::log(surface_area(d - 1)) + log_i);
}

double z_target_spd(int n, double sigma) {
    if (n % 2 != 0) throw OddN("z_target_spd: the closed form holds for even N only");
    if (!(sigma > 0.0)) throw DomainError("z_target_spd: need sigma > 0");
    const double s2 = sigma * sigma;
    double log_pref = 0.5 * n * std::log(kPi * s2 / 2.0) + 0.25 * n * (n - 1) * std::log(2.0) -
                      n * (n - 1) * (n - 1) * s2 / 8.0;
    for (int j = 1; j <= n; ++j) log_pref += std::log(surface_area(j - 1));

    // The Pfaffian of the erf matrix cancels its leading Taylor orders
    // exactly, so it is evaluated in 50-digit floating point; otherwise small
    // sigma would lose the constant entirely.
    return std::exp(log_pref + detail::log_pf_lambda_mp(n, sigma));
}

McEstimate z_target_mc(const GeometrySpec& geom, const RadialLaw& law, int sphere_draws, Rng& rng) {
    std::vector<double> vals;
    vals.reserve(sphere_draws);
    for (int k = 0; k < sphere_draws; ++k) {
        const Direction dir = sample_direction(geom, rng);
        const auto ell = [&](double r) { return law.log_f(r) + log_volume_density(geom, r, dir); };
        const double hi = (geom.kind == Kind::Unitary) ? cut_function(geom, dir)
                                                       : std::numeric_limits<double>::infinity();
        vals.push_back(std::exp(log_radial_integral(ell, 0.0, hi)));
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= sphere_draws;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max(1, sphere_draws - 1);
    const double omega = surface_area(geom.dim - 1);
    McEstimate out;
    out.value = omega * mean;
    out.stderr_ = omega * std::sqrt(var / sphere_draws);
    return out;
}

double delta_of_sigma(int n, double sigma) {
    if (n % 2 != 0) throw OddN("delta_of_sigma: even N only (the target constant has no odd closed form)");
    const auto logz = [n](double s) { return std::log(z_target_spd(n, s)); };
    const double h = 1e-4 * sigma;
    const double d1 = (logz(sigma + h) - logz(sigma - h)) / (2.0 * h);
    const double d2 = (logz(sigma + 0.5 * h) - logz(sigma - 0.5 * h)) / h;
    // One Richardson pass cancels the h^2 term of the central difference.
    return sigma * sigma * sigma * (4.0 * d2 - d1) / 3.0;
}

double jacobi_ode_det(const GeometrySpec& geom, double r, const Direction& dir, int steps) {
    if (!(r > 0.0)) throw DomainError("jacobi_ode_det: need r > 0");
    const int n = geom.n;
    // Constant curvature operator, diagonalized analytically: eigenvalue 0
    // with multiplicity N-1, and for each pair i < j the value -kappa_ij^2
    // (positive definite family, multiplicity beta) or +kappa_ij^2 (unitary
    // group, multiplicity 2).
    std::vector<std::pair<double, int>> blocks;
    blocks.emplace_back(0.0, n - 1);
    const int mult = (geom.kind == Kind::Spd) ? geom.beta : 2;
    const double sign = (geom.kind == Kind::Spd) ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double kij = 0.5 * (dir.sigma[i] - dir.sigma[j]);
            blocks.emplace_back(sign * kij * kij, mult);
        }

    double log_det = 0.0;
    const double h = r / steps;
    for (const auto& [rho, m] : blocks) {
        // a'' = -rho a, integrated as the first-order system y = (a, a').
        double a = 0.0;
        double ap = 1.0;
        for (int k = 0; k < steps; ++k) {
            const double k1a = ap, k1p = -rho * a;
            const double k2a = ap + 0.5 * h * k1p, k2p = -rho * (a + 0.5 * h * k1a);
            const double k3a = ap + 0.5 * h * k2p, k3p = -rho * (a + 0.5 * h * k2a);
            const double k4a = ap + h * k3p, k4p = -rho * (a + h * k3a);
            a += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
            ap += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        }
        log_det += m * std::log(std::abs(a));
    }
    return log_det;
}

TheoryConstants spd_theory(int n, double sigma) {
    TheoryConstants out;
    out.z = z_target_spd(n, sigma);
    const GeometrySpec geom = GeometrySpec::spd(n, 1);
    out.z_kappa = z_kappa_closed(geom, RadialLaw::generalized_gaussian(2.0, sigma));
    out.pi = out.z / out.z_kappa;
    out.delta = delta_of_sigma(n, sigma);
    out.z_method = "closed-form";
    out.z_kappa_method = "closed-form";
    out.delta_method = "closed-form";
    return out;
}

}  // namespace curs
