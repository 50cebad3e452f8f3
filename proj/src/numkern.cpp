#include "curs/numkern.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace curs {

Mat Mat::identity(int side) {
    Mat m(side);
    for (int i = 0; i < side; ++i) m(i, i) = 1.0;
    return m;
}

Mat operator+(const Mat& x, const Mat& y) {
    Mat out(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) out.a[k] = x.a[k] + y.a[k];
    return out;
}

Mat operator-(const Mat& x, const Mat& y) {
    Mat out(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) out.a[k] = x.a[k] - y.a[k];
    return out;
}

Mat operator*(const Mat& x, const Mat& y) {
    const int n = x.n;
    Mat out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) out(i, j) += xik * y(k, j);
        }
    }
    return out;
}

Mat operator*(cplx scale, const Mat& x) {
    Mat out(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) out.a[k] = scale * x.a[k];
    return out;
}

Mat adjoint(const Mat& x) {
    Mat out(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) out(i, j) = std::conj(x(j, i));
    return out;
}

double max_abs(const Mat& x) {
    double m = 0.0;
    for (const cplx& v : x.a) m = std::max(m, std::abs(v));
    return m;
}

double frobenius(const Mat& x) {
    double s = 0.0;
    for (const cplx& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

bool is_hermitian(const Mat& x, double tol) {
    for (int i = 0; i < x.n; ++i)
        for (int j = i; j < x.n; ++j)
            if (std::abs(x(i, j) - std::conj(x(j, i))) > tol) return false;
    return true;
}

Mat hermitize(const Mat& x) {
    Mat out(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) out(i, j) = 0.5 * (x(i, j) + std::conj(x(j, i)));
    return out;
}

EigH eig_hermitian(const Mat& m) {
    const int n = m.n;
    Mat a = hermitize(m);
    Mat v = Mat::identity(n);
    const double scale = std::max(max_abs(a), 1e-300);
    const double stop = 1e-13 * scale;

    // One rotation zeroes the (p, q) entry of the Hermitian working matrix.
    // The complex phase of a_pq is folded into the rotation so the 2x2
    // subproblem reduces to the real symmetric case.
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < stop) {
            EigH out;
            out.lambda.resize(n);
            for (int i = 0; i < n; ++i) out.lambda[i] = a(i, i).real();
            // Sort ascending, permuting eigenvector columns along.
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int i, int j) { return out.lambda[i] < out.lambda[j]; });
            EigH sorted;
            sorted.lambda.resize(n);
            sorted.vectors = Mat(n);
            for (int k = 0; k < n; ++k) {
                sorted.lambda[k] = out.lambda[order[k]];
                for (int i = 0; i < n; ++i) sorted.vectors(i, k) = v(i, order[k]);
            }
            return sorted;
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop * 1e-2) continue;
                const cplx phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // tan(theta) solving t^2 - 2 tau t - 1 = 0, smaller root for
                // stability; tau = (aqq - app) / (2 |apq|).
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx u_pq = -s * phase;        // rotation column entries
                const cplx u_qp = s * std::conj(phase);
                // a <- U† a U, applied as column then row updates.
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp + u_qp * akq;
                    a(k, q) = u_pq * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(u_qp) * aqk;
                    a(q, k) = std::conj(u_pq) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp + u_qp * vkq;
                    v(k, q) = u_pq * vkp + c * vkq;
                }
            }
        }
    }
    throw ConvergenceFailure("eig_hermitian: Jacobi sweeps exhausted");
}

namespace {

Mat apply_spectral(const Mat& m, const std::function<double(double)>& f) {
    const EigH e = eig_hermitian(m);
    const int n = m.n;
    Mat out(n);
    for (int k = 0; k < n; ++k) {
        const double fk = f(e.lambda[k]);
        for (int i = 0; i < n; ++i) {
            const cplx vik = e.vectors(i, k);
            for (int j = 0; j < n; ++j)
                out(i, j) += fk * vik * std::conj(e.vectors(j, k));
        }
    }
    return hermitize(out);
}

void require_pd(const EigH& e, const char* who) {
    for (double l : e.lambda)
        if (l <= 1e-12) throw NotPositiveDefinite(std::string(who) + ": eigenvalue at or below 1e-12");
}

Mat spectral_pd(const Mat& x, const std::function<double(double)>& f, const char* who) {
    const EigH e = eig_hermitian(x);
    require_pd(e, who);
    const int n = x.n;
    Mat out(n);
    for (int k = 0; k < n; ++k) {
        const double fk = f(e.lambda[k]);
        for (int i = 0; i < n; ++i) {
            const cplx vik = e.vectors(i, k);
            for (int j = 0; j < n; ++j)
                out(i, j) += fk * vik * std::conj(e.vectors(j, k));
        }
    }
    return hermitize(out);
}

}  // namespace

Mat expm_hermitian(const Mat& m) {
    return apply_spectral(m, [](double l) { return std::exp(l); });
}

Mat logm_spd(const Mat& x) {
    return spectral_pd(x, [](double l) { return std::log(l); }, "logm_spd");
}

Mat sqrtm_spd(const Mat& x) {
    return spectral_pd(x, [](double l) { return std::sqrt(l); }, "sqrtm_spd");
}

Mat inv_sqrtm_spd(const Mat& x) {
    return spectral_pd(x, [](double l) { return 1.0 / std::sqrt(l); }, "inv_sqrtm_spd");
}

void SkewMat::antisymmetrize() {
    for (int i = 0; i < n; ++i) {
        (*this)(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double w = 0.5 * ((*this)(i, j) - (*this)(j, i));
            (*this)(i, j) = w;
            (*this)(j, i) = -w;
        }
    }
}

double pfaffian(SkewMat a) {
    const int n = a.n;
    if (n % 2 != 0) throw OddDimension("pfaffian: odd matrix size");
    if (n == 0) return 1.0;
    a.antisymmetrize();
    double pf = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        // Partial pivot: bring the largest entry of row k into column k+1.
        int best = k + 1;
        for (int j = k + 2; j < n; ++j)
            if (std::abs(a(k, j)) > std::abs(a(k, best))) best = j;
        if (best != k + 1) {
            for (int i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, best));
            for (int j = 0; j < n; ++j) std::swap(a(k + 1, j), a(best, j));
            pf = -pf;  // congruence by a transposition flips the sign
        }
        const double pivot = a(k, k + 1);
        pf *= pivot;
        if (pivot == 0.0) return 0.0;
        // Congruence col_j <- col_j - f col_{k+1}, row_j <- row_j - f row_{k+1}
        // clears row/column k beyond k+1 with unit determinant, so the
        // Pfaffian expansion reduces to pivot times the trailing submatrix.
        // Entries in rows/columns at or below k+1 are never read again, so
        // the updates only touch the trailing block.
        for (int j = k + 2; j < n; ++j) {
            const double f = a(k, j) / pivot;
            if (f == 0.0) continue;
            for (int i = k + 2; i < n; ++i) a(i, j) -= f * a(i, k + 1);
            for (int i = k + 2; i < n; ++i) a(j, i) -= f * a(k + 1, i);
        }
    }
    return pf;
}

double sinch(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
}

double log_sinch(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return std::log1p(x2 / 6.0 + x2 * x2 / 120.0);
    }
    // sinh overflows near 710; switch to x - log(2x) + log(1 - e^{-2x}) long
    // before that, where both branches agree to machine precision.
    if (ax > 30.0) return ax - std::log(2.0 * ax) + std::log1p(-std::exp(-2.0 * ax));
    return std::log(std::sinh(ax) / ax);
}

double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double erf(double x) { return std::erf(x); }

double norm_cdf(double x) {
    // erfc keeps full relative accuracy in the far left tail, where
    // 1 - 0.5 erfc would cancel.
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double norm_pdf(double x) {
    return 0.39894228040143267794 * std::exp(-0.5 * x * x);
}

double log_sum_exp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace curs
