#pragma once

#include <complex>
#include <vector>

#include "curs/errors.hpp"

namespace curs {

using cplx = std::complex<double>;

/**
 * Dense square complex matrix, row major. Real symmetric inputs are carried
 * with zero imaginary parts; every kernel below is generic over both cases.
 */
struct Mat {
    int n = 0;
    std::vector<cplx> a;

    Mat() = default;
    explicit Mat(int side) : n(side), a(static_cast<std::size_t>(side) * side) {}

    static Mat identity(int side);

    cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Mat& x, const Mat& y);
Mat operator*(cplx scale, const Mat& x);

/// Conjugate transpose.
Mat adjoint(const Mat& x);

/// Largest entry magnitude.
double max_abs(const Mat& x);

/// Frobenius norm, sqrt of the sum of squared entry magnitudes.
double frobenius(const Mat& x);

/// True when x equals its conjugate transpose to the given entrywise tolerance.
bool is_hermitian(const Mat& x, double tol = 1e-12);

/// (x + x†)/2; removes the antihermitian roundoff left by matrix products.
Mat hermitize(const Mat& x);

/// Eigendecomposition of a Hermitian matrix: m = V diag(lambda) V†.
struct EigH {
    std::vector<double> lambda;  // ascending
    Mat vectors;                 // unitary, k-th column pairs with lambda[k]
};

/**
 * Cyclic complex Jacobi eigensolver. Sizes here stay small (at most a few
 * dozen), where Jacobi's robustness and simplicity beat asymptotically faster
 * methods. Sweeps until the off-diagonal max norm falls below 1e-13 times the
 * input's max norm.
 *
 * Throws ConvergenceFailure if the sweep budget is exhausted.
 */
EigH eig_hermitian(const Mat& m);

/// V diag(f(lambda)) V† for a Hermitian m; shared backend of the maps below.
Mat expm_hermitian(const Mat& m);

/// Matrix logarithm of a positive definite input.
/// Throws NotPositiveDefinite if any eigenvalue is at or below 1e-12.
Mat logm_spd(const Mat& x);

/// Principal square root of a positive definite input.
Mat sqrtm_spd(const Mat& x);

/// Inverse principal square root of a positive definite input.
Mat inv_sqrtm_spd(const Mat& x);

/**
 * Real skew-symmetric matrix. Antisymmetry is enforced on construction:
 * entries are replaced by (a - aT)/2 so a[i][j] == -a[j][i] holds exactly.
 */
struct SkewMat {
    int n = 0;
    std::vector<double> a;

    SkewMat() = default;
    explicit SkewMat(int side) : n(side), a(static_cast<std::size_t>(side) * side, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const double& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    void antisymmetrize();
};

/**
 * Pfaffian by skew tridiagonalization (Parlett-Reid style congruence
 * elimination) with partial pivoting; row and column swaps flip the sign and
 * are tracked. Satisfies pfaffian(a)^2 == det(a).
 *
 * Throws OddDimension for odd sizes.
 */
double pfaffian(SkewMat a);

/// sinh(x)/x, with a 3-term Taylor series 1 + x^2/6 + x^4/120 below |x| = 1e-4
/// so the removable singularity at 0 never produces 0/0. Both branches agree
/// to machine precision at the switch point.
double sinch(double x);

/// log(sinch(x)), evaluated without overflow for any finite x (the direct
/// route loses to sinh overflow near |x| = 710).
double log_sinch(double x);

/// sin(x)/x with the matching series 1 - x^2/6 + x^4/120 below |x| = 1e-4.
double sinc(double x);

/// Error function, standard normal CDF, and standard normal density.
/// Absolute error at most 1e-12 over the real line.
double erf(double x);
double norm_cdf(double x);
double norm_pdf(double x);

/// log(sum of exp(v[i])) computed against the running maximum, so sums of
/// hundreds of log-domain terms never overflow.
double log_sum_exp(const std::vector<double>& v);

}  // namespace curs
