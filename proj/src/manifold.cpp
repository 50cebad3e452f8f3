#include "curs/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace curs {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Fills sigma with the eigenvalues of a Hermitian tangent representative,
// sorted descending so every kappa_ij = (sigma_i - sigma_j)/2 with i < j is
// nonnegative.
std::vector<double> descending_eigs(const Mat& h) {
    EigH e = eig_hermitian(h);
    std::reverse(e.lambda.begin(), e.lambda.end());
    return e.lambda;
}

// Hermitian h from a skew-Hermitian unitary-group tangent s = i h.
Mat hermitian_part_of_skew(const Mat& s) {
    Mat h(s.n);
    const cplx minus_i(0.0, -1.0);
    for (std::size_t k = 0; k < s.a.size(); ++k) h.a[k] = minus_i * s.a[k];
    return h;
}

// expm(r s) for skew-Hermitian s, through the eigensystem of h = -i s:
// exp(i r h) = V diag(exp(i r lambda)) V†, a unitary matrix.
Mat expm_skew(const Mat& s, double r) {
    const Mat h = hermitize(hermitian_part_of_skew(s));
    const EigH e = eig_hermitian(h);
    const int n = s.n;
    Mat out(n);
    for (int k = 0; k < n; ++k) {
        const cplx ph = std::polar(1.0, r * e.lambda[k]);
        for (int i = 0; i < n; ++i) {
            const cplx vik = e.vectors(i, k);
            for (int j = 0; j < n; ++j) out(i, j) += ph * vik * std::conj(e.vectors(j, k));
        }
    }
    return out;
}

bool looks_identity(const Mat& x) {
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            const cplx want = (i == j) ? cplx(1.0) : cplx(0.0);
            if (std::abs(x(i, j) - want) > 1e-15) return false;
        }
    return true;
}

void require_unitary(const Mat& x, const char* who) {
    const Mat g = adjoint(x) * x;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const cplx want = (i == j) ? cplx(1.0) : cplx(0.0);
            if (std::abs(g(i, j) - want) > 1e-8)
                throw NotUnitary(std::string(who) + ": point is not unitary");
        }
}

}  // namespace

GeometrySpec GeometrySpec::spd(int n, int beta) {
    if (n < 2) throw DomainError("GeometrySpec::spd: need n >= 2");
    if (beta != 1 && beta != 2 && beta != 4)
        throw DomainError("GeometrySpec::spd: beta must be 1, 2, or 4");
    GeometrySpec g;
    g.kind = Kind::Spd;
    g.n = n;
    g.beta = beta;
    g.dim = beta * n * (n - 1) / 2 + n;
    g.kappa = 1.0 / std::sqrt(2.0);
    g.diameter = std::numeric_limits<double>::infinity();
    return g;
}

GeometrySpec GeometrySpec::unitary(int n) {
    if (n < 2) throw DomainError("GeometrySpec::unitary: need n >= 2");
    GeometrySpec g;
    g.kind = Kind::Unitary;
    g.n = n;
    g.beta = 2;
    g.dim = n * n;
    g.kappa = 0.0;
    g.diameter = std::sqrt(static_cast<double>(n)) * kPi;
    return g;
}

Point identity_point(const GeometrySpec& geom) {
    return Point{Mat::identity(geom.n)};
}

Direction sample_direction(const GeometrySpec& geom, Rng& rng) {
    const int n = geom.n;
    if (geom.kind == Kind::Spd && geom.beta == 4)
        throw Unsupported("sample_direction: quaternion tangent vectors are not implemented");

    Mat h(n);
    if (geom.kind == Kind::Spd && geom.beta == 1) {
        // Symmetrized standard normal square matrix.
        Mat t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(i, j) = rng.normal();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (t(i, j) + t(j, i));
    } else {
        // Complex entries a + ib with a, b of variance 1/2, then Hermitized.
        const double half = 1.0 / std::sqrt(2.0);
        Mat t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(i, j) = cplx(half * rng.normal(), half * rng.normal());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (t(i, j) + std::conj(t(j, i)));
    }

    const double norm = frobenius(h);  // tr(h^2) = sum of squared magnitudes
    for (cplx& v : h.a) v /= norm;

    Direction dir;
    dir.sigma = descending_eigs(h);
    if (geom.kind == Kind::Unitary) {
        const cplx i_unit(0.0, 1.0);
        dir.s = i_unit * h;
    } else {
        dir.s = h;
    }
    return dir;
}

Direction direction_from_matrix(const GeometrySpec& geom, const Mat& tangent) {
    Mat h = tangent;
    if (geom.kind == Kind::Unitary) h = hermitian_part_of_skew(tangent);
    h = hermitize(h);
    const double norm = frobenius(h);
    if (norm <= 0.0) throw DomainError("direction_from_matrix: zero tangent vector");
    for (cplx& v : h.a) v /= norm;

    Direction dir;
    dir.sigma = descending_eigs(h);
    if (geom.kind == Kind::Unitary) {
        const cplx i_unit(0.0, 1.0);
        dir.s = i_unit * h;
    } else {
        dir.s = h;
    }
    return dir;
}

double log_volume_density(const GeometrySpec& geom, double r, const Direction& dir) {
    if (r <= 0.0) throw DomainError("log_volume_density: need r > 0");
    const int n = geom.n;
    const double logr = std::log(r);
    double out = (n - 1) * logr;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double kij = 0.5 * (dir.sigma[i] - dir.sigma[j]);
            if (geom.kind == Kind::Spd) {
                out += geom.beta * (logr + log_sinch(kij * r));
            } else {
                out += 2.0 * (logr + std::log(std::abs(sinc(kij * r))));
            }
        }
    }
    return out;
}

Point exp_map(const GeometrySpec& geom, double r, const Direction& dir, const Point& base) {
    if (geom.kind == Kind::Unitary) {
        const Mat step = expm_skew(dir.s, r);
        if (looks_identity(base.x)) return Point{step};
        return Point{base.x * step};
    }
    if (geom.beta == 4) throw Unsupported("exp_map: quaternion points are not implemented");
    Mat rs(dir.s.n);
    for (std::size_t k = 0; k < dir.s.a.size(); ++k) rs.a[k] = r * dir.s.a[k];
    const Mat step = expm_hermitian(rs);
    if (looks_identity(base.x)) return Point{step};
    const Mat root = sqrtm_spd(base.x);
    return Point{root * step * root};
}

double distance(const GeometrySpec& geom, const Point& x, const Point& y) {
    if (geom.kind == Kind::Spd) {
        const Mat xmh = inv_sqrtm_spd(x.x);  // raises NotPositiveDefinite on bad input
        const Mat mid = hermitize(xmh * y.x * xmh);
        const Mat lg = logm_spd(mid);
        return frobenius(lg);
    }
    require_unitary(x.x, "distance");
    require_unitary(y.x, "distance");
    const Point w{adjoint(x.x) * y.x};
    double sum = 0.0;
    for (double th : eigen_angles(geom, w)) sum += th * th;
    return std::sqrt(sum);
}

double cut_function(const GeometrySpec& geom, const Direction& dir) {
    if (geom.kind == Kind::Spd) return std::numeric_limits<double>::infinity();
    double top = 0.0;
    for (double v : dir.sigma) top = std::max(top, std::abs(v));
    return kPi / top;
}

std::vector<double> eigen_angles(const GeometrySpec& geom, const Point& x) {
    const int n = geom.n;
    const Mat& w = x.x;
    const Mat wh = adjoint(w);

    // A unitary matrix is normal, so it shares eigenvectors with any real
    // combination of its Hermitian and anti-Hermitian parts. A combination
    // can accidentally collapse two distinct eigenvalues; the residual check
    // catches that and a different mixing weight is tried.
    const double weights[] = {0.5, 0.38196601125010515, 0.7639320225002102,
                              0.14589803375031546, 0.9098300562505258,
                              0.2917960675006309, 0.6737281006507016, 0.05572809000084121};
    for (double theta : weights) {
        Mat h(n);
        const cplx half(0.5, 0.0);
        const cplx half_i(0.0, -0.5);
        for (std::size_t k = 0; k < h.a.size(); ++k)
            h.a[k] = theta * half * (w.a[k] + wh.a[k]) + (1.0 - theta) * half_i * (w.a[k] - wh.a[k]);
        const EigH e = eig_hermitian(hermitize(h));

        std::vector<double> angles(n);
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            // Rayleigh quotient v† w v recovers the unit-circle eigenvalue.
            cplx lam(0.0);
            std::vector<cplx> wv(n, cplx(0.0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) wv[i] += w(i, j) * e.vectors(j, k);
            for (int i = 0; i < n; ++i) lam += std::conj(e.vectors(i, k)) * wv[i];
            double resid = 0.0;
            for (int i = 0; i < n; ++i) resid += std::norm(wv[i] - lam * e.vectors(i, k));
            if (std::sqrt(resid) > 1e-8 || std::abs(std::abs(lam) - 1.0) > 1e-8) ok = false;
            angles[k] = std::atan2(lam.imag(), lam.real());  // lands in (-pi, pi]
        }
        if (ok) return angles;
    }
    throw ConvergenceFailure("eigen_angles: no mixing weight separated the spectrum");
}

std::string point_to_json(const GeometrySpec& geom, const Point& x) {
    nlohmann::json j;
    j["n"] = geom.n;
    j["beta"] = geom.beta;
    std::vector<std::vector<double>> re(geom.n, std::vector<double>(geom.n));
    std::vector<std::vector<double>> im(geom.n, std::vector<double>(geom.n));
    bool any_im = false;
    for (int i = 0; i < geom.n; ++i)
        for (int k = 0; k < geom.n; ++k) {
            re[i][k] = x.x(i, k).real();
            im[i][k] = x.x(i, k).imag();
            if (im[i][k] != 0.0) any_im = true;
        }
    j["re"] = re;
    if (geom.beta != 1 || any_im) j["im"] = im;
    return j.dump();
}

Point point_from_json(const GeometrySpec& geom, const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    if (n != geom.n) throw DomainError("point_from_json: size mismatch");
    Point p{Mat(n)};
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im;
    if (j.contains("im")) im = j.at("im").get<std::vector<std::vector<double>>>();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            p.x(i, k) = cplx(re.at(i).at(k), im.empty() ? 0.0 : im.at(i).at(k));
    return p;
}

}  // namespace curs
