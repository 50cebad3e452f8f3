#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "curs/engine.hpp"
#include "curs/errors.hpp"
#include "curs/manifold.hpp"
#include "curs/numkern.hpp"
#include "curs/radial.hpp"
#include "curs/rng.hpp"
#include "curs/theory.hpp"

namespace {

using nlohmann::json;
using namespace curs;

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.7071067811865475244;

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

// Writes to --out when given, stdout otherwise.
struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw UsageError("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

GeometrySpec make_geometry(const std::string& manifold, int n, int beta) {
    if (manifold == "spd") return GeometrySpec::spd(n, beta);
    if (manifold == "unitary") return GeometrySpec::unitary(n);
    throw UsageError("unknown manifold: " + manifold);
}

RadialLaw make_law(bool uniform, double alpha, double sigma, bool sigma_set) {
    if (uniform) {
        if (sigma_set) throw UsageError("--uniform and --sigma are mutually exclusive");
        return RadialLaw::uniform();
    }
    if (!sigma_set) throw UsageError("either --sigma or --uniform is required");
    return RadialLaw::generalized_gaussian(alpha, sigma);
}

Variant parse_variant(const std::string& name) {
    if (name == "general") return Variant::General;
    if (name == "sharp") return Variant::Sharp;
    if (name == "cutlocus") return Variant::CutLocus;
    throw UsageError("unknown variant: " + name);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("malformed --sigma-grid, expected start:stop:step");
    double start = 0.0, stop = 0.0, step = 0.0;
    try {
        std::size_t p0 = 0, p1 = 0, p2 = 0;
        start = std::stod(parts[0], &p0);
        stop = std::stod(parts[1], &p1);
        step = std::stod(parts[2], &p2);
        if (p0 != parts[0].size() || p1 != parts[1].size() || p2 != parts[2].size())
            throw UsageError("malformed --sigma-grid value");
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("malformed --sigma-grid, expected numeric start:stop:step");
    }
    if (!(start > 0.0) || !(step > 0.0) || stop < start)
        throw UsageError("--sigma-grid needs 0 < start <= stop and step > 0");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double s = start + i * step;
        if (s > stop + 1e-9 * step) break;
        grid.push_back(s);
        if (grid.size() > 10000) throw UsageError("--sigma-grid has more than 10000 points");
    }
    return grid;
}

void write_svg(const std::string& path, const std::vector<double>& sigma,
               const std::vector<double>& pi_hat, const std::vector<double>& se,
               const std::vector<double>& pi_theory) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open svg file: " + path);
    const double left = 70, right = 690, top = 20, bottom = 430;
    const double xmin = sigma.front();
    const double xmax = sigma.size() > 1 ? sigma.back() : sigma.front() + 1.0;
    double ymax = 1e-6;
    for (double v : pi_hat) ymax = std::max(ymax, v);
    for (double v : pi_theory) ymax = std::max(ymax, v);
    ymax *= 1.08;
    auto X = [&](double s) { return left + (right - left) * (s - xmin) / (xmax - xmin); };
    auto Y = [&](double p) { return bottom - (bottom - top) * p / ymax; };
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 720 480\">\n"
      << "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n"
      << "<line x1=\"70\" y1=\"430\" x2=\"690\" y2=\"430\" stroke=\"#333\"/>\n"
      << "<line x1=\"70\" y1=\"20\" x2=\"70\" y2=\"430\" stroke=\"#333\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double sx = xmin + (xmax - xmin) * t / 4.0;
        const double px = X(sx);
        f << "<line x1=\"" << px << "\" y1=\"430\" x2=\"" << px
          << "\" y2=\"435\" stroke=\"#333\"/>\n"
          << "<text x=\"" << px << "\" y=\"450\" font-family=\"sans-serif\" font-size=\"12\""
          << " text-anchor=\"middle\">" << std::setprecision(3) << sx << "</text>\n";
        const double py = Y(ymax * t / 4.0);
        f << "<line x1=\"65\" y1=\"" << py << "\" x2=\"70\" y2=\"" << py
          << "\" stroke=\"#333\"/>\n"
          << "<text x=\"60\" y=\"" << py + 4 << "\" font-family=\"sans-serif\" font-size=\"12\""
          << " text-anchor=\"end\">" << std::setprecision(3) << ymax * t / 4.0 << "</text>\n";
    }
    f << "<text x=\"380\" y=\"474\" font-family=\"sans-serif\" font-size=\"13\""
      << " text-anchor=\"middle\">sigma</text>\n"
      << "<text x=\"16\" y=\"225\" font-family=\"sans-serif\" font-size=\"13\""
      << " text-anchor=\"middle\" transform=\"rotate(-90 16 225)\">acceptance</text>\n";
    if (!pi_theory.empty()) {
        f << "<polyline fill=\"none\" stroke=\"#3366aa\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < sigma.size(); ++i)
            f << X(sigma[i]) << "," << Y(pi_theory[i]) << " ";
        f << "\"/>\n";
    }
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const double px = X(sigma[i]);
        f << "<line x1=\"" << px << "\" y1=\"" << Y(std::max(0.0, pi_hat[i] - 3.0 * se[i]))
          << "\" x2=\"" << px << "\" y2=\"" << Y(std::min(ymax, pi_hat[i] + 3.0 * se[i]))
          << "\" stroke=\"#111\"/>\n"
          << "<circle cx=\"" << px << "\" cy=\"" << Y(pi_hat[i])
          << "\" r=\"3.5\" fill=\"#111\"/>\n";
    }
    f << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Statistics helpers for the validation suites.

double ks_statistic(std::vector<double> v, const std::function<double(double)>& cdf) {
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double c = cdf(v[i]);
        worst = std::max(worst, std::abs(c - i / n));
        worst = std::max(worst, std::abs(c - (i + 1) / n));
    }
    return worst;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double worst = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        worst = std::max(worst, std::abs(static_cast<double>(i) / a.size() -
                                         static_cast<double>(j) / b.size()));
    }
    return worst;
}

double kolmogorov_q(double lambda) {
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? term : -term);
    }
    return std::min(1.0, std::max(0.0, sum));
}

double ks_two_sample_p(double stat, std::size_t n, std::size_t m) {
    const double ne = static_cast<double>(n) * m / (static_cast<double>(n) + m);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * stat;
    return kolmogorov_q(lambda);
}

// Tabulated CDF from a log density by per-cell Simpson on a uniform grid.
struct TabCdf {
    std::vector<double> r, c;
    double operator()(double x) const {
        if (x <= r.front()) return 0.0;
        if (x >= r.back()) return 1.0;
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - r.begin()) - 1;
        const double t = (x - r[k]) / (r[k + 1] - r[k]);
        return c[k] + t * (c[k + 1] - c[k]);
    }
};

TabCdf make_cdf(const std::function<double(double)>& log_dens, double lo, double hi, int cells) {
    std::vector<double> vals(2 * cells + 1);
    const double h = (hi - lo) / (2 * cells);
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 2 * cells; ++i) {
        vals[i] = log_dens(lo + i * h);
        peak = std::max(peak, vals[i]);
    }
    TabCdf out;
    out.r.resize(cells + 1);
    out.c.resize(cells + 1);
    out.r[0] = lo;
    out.c[0] = 0.0;
    for (int k = 0; k < cells; ++k) {
        const double a = std::exp(vals[2 * k] - peak);
        const double m = std::exp(vals[2 * k + 1] - peak);
        const double b = std::exp(vals[2 * k + 2] - peak);
        out.r[k + 1] = lo + (2 * k + 2) * h;
        out.c[k + 1] = out.c[k] + (a + 4.0 * m + b) * h / 3.0;
    }
    const double total = out.c.back();
    for (double& v : out.c) v /= total;
    return out;
}

// Haar-distributed unitary by modified Gram-Schmidt QR of a complex Ginibre
// matrix; the R factor's diagonal comes out real positive, so no phase fix is
// needed.
Mat haar_unitary(int n, Rng& rng) {
    Mat g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = cplx(rng.normal(), rng.normal()) * kInvSqrt2;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (int i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(g(i, j));
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) g(i, j) /= norm;
    }
    return g;
}

double angle_gap(const GeometrySpec& geom, const Point& x) {
    const std::vector<double> ang = eigen_angles(geom, x);
    const double d = std::abs(ang[0] - ang[1]);
    return std::min(d, 2.0 * kPi - d);
}

// ---------------------------------------------------------------------------
// Validation suites. Each returns {suite, checks: [{name, status, metric}]}.

json make_check(const std::string& name, bool pass, double metric, bool& suite_ok) {
    suite_ok = suite_ok && pass;
    return json{{"name", name}, {"status", pass ? "pass" : "fail"}, {"metric", metric}};
}

json suite_geometry(std::uint64_t seed, bool& ok) {
    bool suite_ok = true;
    json checks = json::array();
    Rng rng(seed + 11);
    struct Case {
        GeometrySpec geom;
        std::string name;
    };
    std::vector<Case> cases;
    for (int beta : {1, 2})
        for (int n : {2, 3, 4})
            cases.push_back({GeometrySpec::spd(n, beta),
                             "round-trip-spd-n" + std::to_string(n) + "-beta" + std::to_string(beta)});
    cases.push_back({GeometrySpec::unitary(2), "round-trip-unitary-n2"});
    cases.push_back({GeometrySpec::unitary(3), "round-trip-unitary-n3"});
    for (const Case& c : cases) {
        const Point base = exp_map(c.geom, 0.5, sample_direction(c.geom, rng),
                                   identity_point(c.geom));
        double worst = 0.0;
        for (int k = 0; k < 2000; ++k) {
            const Direction dir = sample_direction(c.geom, rng);
            double r = 0.05 + 2.5 * rng.uniform();
            if (c.geom.kind == Kind::Unitary)
                r = (0.05 + 0.9 * rng.uniform()) * cut_function(c.geom, dir);
            const Point y = exp_map(c.geom, r, dir, base);
            worst = std::max(worst, std::abs(distance(c.geom, base, y) - r));
        }
        checks.push_back(make_check(c.name, worst <= 1e-8, worst, suite_ok));
    }

    // U(2) diameter: distance from the identity to -identity is sqrt(2) pi.
    const GeometrySpec u2 = GeometrySpec::unitary(2);
    Point minus_id{cplx(-1.0, 0.0) * Mat::identity(2)};
    const double diam = distance(u2, identity_point(u2), minus_id);
    const double diam_err = std::abs(diam - std::sqrt(2.0) * kPi);
    checks.push_back(make_check("unitary-n2-diameter", diam_err < 1e-9, diam_err, suite_ok));

    // Cut radius never exceeds the diameter bound sqrt(N) pi.
    const GeometrySpec u3 = GeometrySpec::unitary(3);
    double worst_cut = 0.0;
    for (int k = 0; k < 20000; ++k)
        worst_cut = std::max(worst_cut, cut_function(u3, sample_direction(u3, rng)));
    checks.push_back(make_check("unitary-n3-cut-bound",
                                worst_cut <= std::sqrt(3.0) * kPi + 1e-9, worst_cut, suite_ok));

    ok = suite_ok;
    return json{{"suite", "geometry"}, {"checks", checks}};
}

json suite_ode(std::uint64_t seed, bool& ok) {
    bool suite_ok = true;
    json checks = json::array();
    Rng rng(seed + 23);
    struct Case {
        GeometrySpec geom;
        std::string name;
    };
    const std::vector<Case> cases = {
        {GeometrySpec::spd(2, 1), "ode-spd-n2-beta1"},
        {GeometrySpec::spd(3, 1), "ode-spd-n3-beta1"},
        {GeometrySpec::spd(3, 2), "ode-spd-n3-beta2"},
        {GeometrySpec::unitary(2), "ode-unitary-n2"},
    };
    for (const Case& c : cases) {
        double worst = 0.0;
        for (int k = 0; k < 25; ++k) {
            const Direction dir = sample_direction(c.geom, rng);
            double r = 0.2 + 3.0 * rng.uniform();
            if (c.geom.kind == Kind::Unitary)
                r = (0.1 + 0.85 * rng.uniform()) * cut_function(c.geom, dir);
            const double ode = jacobi_ode_det(c.geom, r, dir, 10000);
            const double closed = log_volume_density(c.geom, r, dir);
            worst = std::max(worst,
                             std::abs(ode - closed) / std::max(1.0, std::abs(closed)));
        }
        checks.push_back(make_check(c.name + "-x25", worst <= 1e-6, worst, suite_ok));
    }
    ok = suite_ok;
    return json{{"suite", "ode"}, {"checks", checks}};
}

json suite_haar(std::uint64_t seed, bool& ok) {
    bool suite_ok = true;
    json checks = json::array();
    const GeometrySpec u2 = GeometrySpec::unitary(2);
    CursConfig cfg;
    cfg.geom = u2;
    cfg.law = RadialLaw::uniform();
    cfg.variant = Variant::CutLocus;
    cfg.base = identity_point(u2);
    cfg.seed = seed + 31;
    validate_config(cfg);

    const int count = 100000;
    Rng rng(cfg.seed);
    CursSampler sampler(cfg);
    double sum_tr2 = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::vector<double> gaps_curs(count), gaps_oracle(count);
    for (int k = 0; k < count; ++k) {
        const SphericalSample s = sampler.sample(rng);
        min_margin = std::min(min_margin, cut_function(u2, s.dir) - s.r);
        const Point x = exp_map(u2, s.r, s.dir, cfg.base);
        sum_tr2 += std::norm(x.x(0, 0) + x.x(1, 1));
        gaps_curs[k] = angle_gap(u2, x);
    }
    Rng orng(seed + 37);
    for (int k = 0; k < count; ++k)
        gaps_oracle[k] = angle_gap(u2, Point{haar_unitary(2, orng)});

    const double moment_err = std::abs(sum_tr2 / count - 1.0);
    checks.push_back(make_check("trace-moment", moment_err < 0.01, moment_err, suite_ok));
    const double ks = ks_two_sample(gaps_curs, gaps_oracle);
    checks.push_back(make_check("angle-gap-ks", ks < 0.02, ks, suite_ok));
    checks.push_back(make_check("cut-bound-margin", min_margin > 0.0, min_margin, suite_ok));
    ok = suite_ok;
    return json{{"suite", "haar"}, {"checks", checks}};
}

json suite_marginals(std::uint64_t seed, bool& ok) {
    bool suite_ok = true;
    json checks = json::array();
    const double sigma = 0.6;
    const GeometrySpec geom = GeometrySpec::spd(2, 1);
    CursConfig cfg;
    cfg.geom = geom;
    cfg.law = RadialLaw::generalized_gaussian(2.0, sigma);
    cfg.variant = Variant::General;
    cfg.base = identity_point(geom);
    cfg.seed = seed + 41;
    validate_config(cfg);

    const int count = 50000;
    Rng rng(cfg.seed);
    CursSampler sampler(cfg);
    std::vector<double> rs(count);
    for (int k = 0; k < count; ++k) rs[k] = sampler.sample(rng).r;

    // Accepted-radius marginal for N = 2: the direction's curvature is
    // kappa_12 = sqrt(1 - u^2)/sqrt(2) with u uniform on (-1, 1), so
    // p(r) ~ exp(-r^2/2 sigma^2) r^2 E_u sinch(kappa_12 r).
    const auto log_marginal = [sigma](double r) {
        const int panels = 256;
        double acc = 0.0;
        for (int i = 0; i <= panels; ++i) {
            const double u = static_cast<double>(i) / panels;
            const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * sinch(r * std::sqrt(1.0 - u * u) * kInvSqrt2);
        }
        acc /= 3.0 * panels;
        return -r * r / (2.0 * sigma * sigma) + 2.0 * std::log(r) + std::log(acc);
    };
    const TabCdf cdf = make_cdf(log_marginal, 1e-9, 8.0 * sigma, 4096);
    const double ks = ks_statistic(rs, cdf);
    checks.push_back(make_check("accepted-radius-ks", ks < 0.01, ks, suite_ok));
    ok = suite_ok;
    return json{{"suite", "marginals"}, {"checks", checks}};
}

json suite_sharp_equivalence(std::uint64_t seed, bool& ok) {
    bool suite_ok = true;
    json checks = json::array();
    const GeometrySpec geom = GeometrySpec::spd(4, 1);
    const int count = 50000;
    std::vector<double> r_general, r_sharp;
    double pi_general = 0.0, pi_sharp = 0.0;
    for (Variant variant : {Variant::General, Variant::Sharp}) {
        CursConfig cfg;
        cfg.geom = geom;
        cfg.law = RadialLaw::generalized_gaussian(2.0, 0.6);
        cfg.variant = variant;
        cfg.base = identity_point(geom);
        cfg.seed = seed + (variant == Variant::General ? 43 : 47);
        validate_config(cfg);
        Rng rng(cfg.seed);
        CursSampler sampler(cfg);
        std::vector<double>& rs = variant == Variant::General ? r_general : r_sharp;
        rs.resize(count);
        std::uint64_t rounds = 0;
        for (int k = 0; k < count; ++k) {
            const SphericalSample s = sampler.sample(rng);
            rs[k] = s.r;
            rounds += s.iterations;
        }
        const double pi = static_cast<double>(count) / static_cast<double>(rounds);
        (variant == Variant::General ? pi_general : pi_sharp) = pi;
    }
    const double stat = ks_two_sample(r_general, r_sharp);
    const double p = ks_two_sample_p(stat, r_general.size(), r_sharp.size());
    checks.push_back(make_check("radius-ks-p", p > 0.01, p, suite_ok));
    checks.push_back(
        make_check("sharp-accepts-more", pi_sharp > pi_general, pi_sharp - pi_general, suite_ok));
    ok = suite_ok;
    return json{{"suite", "sharp-equivalence"}, {"checks", checks}};
}

// ---------------------------------------------------------------------------
// Subcommands.

struct SampleOpts {
    std::string manifold = "spd";
    int n = 2;
    int beta = 1;
    double alpha = 2.0;
    double sigma = 0.0;
    bool sigma_set = false;
    bool uniform = false;
    std::string variant = "general";
    int count = 1;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::string base_file;
    std::string out;
};

int cmd_sample(const SampleOpts& o) {
    const GeometrySpec geom = make_geometry(o.manifold, o.n, o.beta);
    CursConfig cfg;
    cfg.geom = geom;
    cfg.law = make_law(o.uniform, o.alpha, o.sigma, o.sigma_set);
    cfg.variant = parse_variant(o.variant);
    cfg.base = identity_point(geom);
    if (!o.base_file.empty()) {
        std::ifstream in(o.base_file, std::ios::binary);
        if (!in) throw UsageError("cannot read base file: " + o.base_file);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg.base = point_from_json(geom, ss.str());
    }
    cfg.seed = o.seed;
    if (o.budget > 0) cfg.budget = o.budget;
    validate_config(cfg);

    Output out(o.out);
    Rng rng(o.seed);
    CursSampler sampler(cfg);
    for (int k = 0; k < o.count; ++k) {
        const SphericalSample s = sampler.sample(rng);
        const Point x = exp_map(geom, s.r, s.dir, cfg.base);
        json rec;
        rec["r"] = s.r;
        rec["sigma_eigs"] = s.dir.sigma;
        rec["point"] = json::parse(point_to_json(geom, x));
        rec["iterations"] = s.iterations;
        out.stream() << rec.dump() << "\n";
    }
    return 0;
}

struct SweepOpts {
    int n = 4;
    int beta = 1;
    double alpha = 2.0;
    std::string variant = "general";
    std::string grid;
    std::uint64_t rounds = 1000000;
    bool theory = false;
    std::string svg;
    std::string out;
    std::uint64_t seed = 0;
    int threads = 1;
};

int cmd_acceptance_sweep(const SweepOpts& o) {
    const std::vector<double> grid = parse_grid(o.grid);
    const GeometrySpec geom = GeometrySpec::spd(o.n, o.beta);
    const Variant variant = parse_variant(o.variant);
    if (o.theory && (o.n % 2 != 0 || o.beta != 1 || o.alpha != 2.0))
        throw UsageError("--theory needs even N, beta 1, alpha 2");

    Output out(o.out);
    out.stream() << "sigma,delta,pi_hat,stderr,pi_theory\n";
    std::vector<double> pi_hat(grid.size()), se(grid.size()), pi_theory;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CursConfig cfg;
        cfg.geom = geom;
        cfg.law = RadialLaw::generalized_gaussian(o.alpha, grid[i]);
        cfg.variant = variant;
        cfg.base = identity_point(geom);
        cfg.seed = o.seed + i;
        validate_config(cfg);
        const AcceptanceStats st = estimate_acceptance_parallel(cfg, o.rounds, o.threads);
        pi_hat[i] = st.pi_hat;
        se[i] = st.stderr_;
        std::string delta_col, theory_col;
        if (o.theory) {
            const TheoryConstants tc = spd_theory(o.n, grid[i]);
            delta_col = fmt(tc.delta);
            theory_col = fmt(tc.pi);
            pi_theory.push_back(tc.pi);
        }
        out.stream() << fmt(grid[i]) << "," << delta_col << "," << fmt(st.pi_hat) << ","
                     << fmt(st.stderr_) << "," << theory_col << "\n";
    }
    if (!o.svg.empty()) write_svg(o.svg, grid, pi_hat, se, pi_theory);
    return 0;
}

struct TablesOpts {
    int n = 4;
    std::uint64_t rounds = 1000000;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

int cmd_tables(const TablesOpts& o) {
    std::vector<double> grid;
    if (o.n == 4)
        grid = {0.2, 0.4, 0.6, 0.8};
    else if (o.n == 6)
        grid = {0.1, 0.2, 0.3};
    else
        throw UsageError("tables are defined for --n 4 or --n 6");
    const GeometrySpec geom = GeometrySpec::spd(o.n, 1);

    Output out(o.out);
    out.stream() << "sigma,pi_hat_general,pi_hat_sharp\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double cells[2] = {0.0, 0.0};
        for (int v = 0; v < 2; ++v) {
            CursConfig cfg;
            cfg.geom = geom;
            cfg.law = RadialLaw::generalized_gaussian(2.0, grid[i]);
            cfg.variant = v == 0 ? Variant::General : Variant::Sharp;
            cfg.base = identity_point(geom);
            cfg.seed = o.seed + 2 * i + v;
            validate_config(cfg);
            cells[v] = estimate_acceptance_parallel(cfg, o.rounds, o.threads).pi_hat;
        }
        out.stream() << fmt(grid[i]) << "," << fmt(cells[0]) << "," << fmt(cells[1]) << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& suite, std::uint64_t seed, const std::string& out_path) {
    Output out(out_path);
    json report = json::array();
    bool all_ok = true;
    const auto want = [&suite](const char* name) { return suite == "all" || suite == name; };
    bool ok = true;
    if (want("geometry")) {
        report.push_back(suite_geometry(seed, ok));
        all_ok = all_ok && ok;
    }
    if (want("ode")) {
        report.push_back(suite_ode(seed, ok));
        all_ok = all_ok && ok;
    }
    if (want("haar")) {
        report.push_back(suite_haar(seed, ok));
        all_ok = all_ok && ok;
    }
    if (want("marginals")) {
        report.push_back(suite_marginals(seed, ok));
        all_ok = all_ok && ok;
    }
    if (want("sharp-equivalence")) {
        report.push_back(suite_sharp_equivalence(seed, ok));
        all_ok = all_ok && ok;
    }
    out.stream() << report.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

struct TheoryOpts {
    std::string manifold = "spd";
    int n = 4;
    int beta = 1;
    double alpha = 2.0;
    double sigma = 0.0;
    bool sigma_set = false;
    bool uniform = false;
    bool mc = false;
    int draws = 20000;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_theory(const TheoryOpts& o) {
    Output out(o.out);
    json j;
    if (!o.mc) {
        if (o.manifold != "spd" || o.n % 2 != 0 || o.beta != 1 || o.alpha != 2.0 || o.uniform)
            throw UsageError(
                "closed forms cover the real positive definite family with a Gaussian law "
                "and even N; pass --mc for anything else");
        if (!o.sigma_set) throw UsageError("--sigma is required");
        const TheoryConstants tc = spd_theory(o.n, o.sigma);
        j["Z"] = tc.z;
        j["Z_kappa"] = tc.z_kappa;
        j["pi"] = tc.pi;
        j["delta"] = tc.delta;
        j["methods"] = {{"Z", tc.z_method}, {"Z_kappa", tc.z_kappa_method},
                        {"delta", tc.delta_method}};
        j["errors"] = {{"Z_stderr", tc.z_stderr}};
    } else {
        const GeometrySpec geom = make_geometry(o.manifold, o.n, o.beta);
        const RadialLaw law = make_law(o.uniform, o.alpha, o.sigma, o.sigma_set);
        Rng rng(o.seed);
        const McEstimate z = z_target_mc(geom, law, o.draws, rng);
        const double zk = z_kappa_quad(geom, law);
        j["Z"] = z.value;
        j["Z_kappa"] = zk;
        j["pi"] = z.value / zk;
        j["delta"] = nullptr;
        j["methods"] = {{"Z", "monte-carlo"}, {"Z_kappa", "quadrature"}, {"delta", "none"}};
        j["errors"] = {{"Z_stderr", z.stderr_}};
    }
    out.stream() << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature-based rejection sampling on matrix manifolds"};
    app.require_subcommand(1);

    SampleOpts so;
    CLI::App* sample = app.add_subcommand("sample", "draw samples and dump them as JSON lines");
    sample->add_option("--manifold", so.manifold, "spd or unitary")
        ->check(CLI::IsMember({"spd", "unitary"}));
    sample->add_option("--n", so.n, "matrix side length");
    sample->add_option("--beta", so.beta, "field parameter for spd: 1 real, 2 complex");
    sample->add_option("--alpha", so.alpha, "radial law exponent");
    CLI::Option* s_sigma = sample->add_option("--sigma", so.sigma, "radial law scale");
    sample->add_flag("--uniform", so.uniform, "uniform radial law (unitary only)");
    sample->add_option("--variant", so.variant, "general, sharp, or cutlocus")
        ->check(CLI::IsMember({"general", "sharp", "cutlocus"}));
    sample->add_option("--count", so.count, "number of samples")->check(CLI::PositiveNumber);
    sample->add_option("--seed", so.seed, "random seed")->envname("CURS_SEED");
    sample->add_option("--budget", so.budget, "proposal rounds allowed per sample");
    sample->add_option("--base-file", so.base_file, "JSON file with the base point");
    sample->add_option("--out", so.out, "output file (default stdout)");

    SweepOpts wo;
    CLI::App* sweep = app.add_subcommand("acceptance-sweep",
                                         "empirical acceptance over a sigma grid, CSV output");
    sweep->add_option("--n", wo.n, "matrix side length");
    sweep->add_option("--beta", wo.beta, "field parameter");
    sweep->add_option("--alpha", wo.alpha, "radial law exponent");
    sweep->add_option("--variant", wo.variant, "general, sharp, or cutlocus")
        ->check(CLI::IsMember({"general", "sharp", "cutlocus"}));
    sweep->add_option("--sigma-grid", wo.grid, "grid as start:stop:step")->required();
    sweep->add_option("--rounds", wo.rounds, "proposal rounds per grid point");
    sweep->add_flag("--theory", wo.theory, "add closed-form delta and pi columns");
    sweep->add_option("--svg", wo.svg, "write a line and dot plot to this file");
    sweep->add_option("--out", wo.out, "output file (default stdout)");
    sweep->add_option("--seed", wo.seed, "random seed")->envname("CURS_SEED");
    sweep->add_option("--threads", wo.threads, "worker threads")->check(CLI::Range(1, 256));

    TablesOpts to;
    CLI::App* tables = app.add_subcommand("tables", "acceptance tables for N = 4 and N = 6");
    tables->add_option("--n", to.n, "4 or 6");
    tables->add_option("--rounds", to.rounds, "proposal rounds per cell");
    tables->add_option("--seed", to.seed, "random seed")->envname("CURS_SEED");
    tables->add_option("--threads", to.threads, "worker threads")->check(CLI::Range(1, 256));
    tables->add_option("--out", to.out, "output file (default stdout)");

    std::string v_suite = "all";
    std::uint64_t v_seed = 0;
    std::string v_out;
    CLI::App* validate = app.add_subcommand("validate", "run the invariant suites");
    validate->add_option("--suite", v_suite, "suite name or all")
        ->check(CLI::IsMember(
            {"all", "geometry", "ode", "haar", "marginals", "sharp-equivalence"}));
    validate->add_option("--seed", v_seed, "random seed")->envname("CURS_SEED");
    validate->add_option("--out", v_out, "output file (default stdout)");

    TheoryOpts th;
    CLI::App* theory = app.add_subcommand("theory", "normalizing constants and acceptance");
    theory->add_option("--manifold", th.manifold, "spd or unitary")
        ->check(CLI::IsMember({"spd", "unitary"}));
    theory->add_option("--n", th.n, "matrix side length");
    theory->add_option("--beta", th.beta, "field parameter");
    theory->add_option("--alpha", th.alpha, "radial law exponent");
    CLI::Option* t_sigma = theory->add_option("--sigma", th.sigma, "radial law scale");
    theory->add_flag("--uniform", th.uniform, "uniform radial law (unitary only)");
    theory->add_flag("--mc", th.mc, "Monte Carlo target constant instead of closed forms");
    theory->add_option("--draws", th.draws, "sphere draws for --mc")->check(CLI::PositiveNumber);
    theory->add_option("--seed", th.seed, "random seed")->envname("CURS_SEED");
    theory->add_option("--out", th.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        so.sigma_set = s_sigma->count() > 0;
        th.sigma_set = t_sigma->count() > 0;
        if (sample->parsed()) return cmd_sample(so);
        if (sweep->parsed()) return cmd_acceptance_sweep(wo);
        if (tables->parsed()) return cmd_tables(to);
        if (validate->parsed()) return cmd_validate(v_suite, v_seed, v_out);
        if (theory->parsed()) return cmd_theory(th);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const curs::IterationBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const curs::InvalidConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const curs::OddN& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const curs::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const curs::Unsupported& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const curs::NotIntegrable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
