#pragma once

#include <string>
#include <vector>

#include "curs/numkern.hpp"
#include "curs/rng.hpp"

namespace curs {

enum class Kind { Spd, Unitary };

/**
 * A sampling geometry: the positive definite matrix family with the
 * affine-invariant metric (real beta = 1, complex beta = 2, quaternion
 * beta = 4 for density evaluation only), or the unitary group U(N) with the
 * bi-invariant metric.
 */
struct GeometrySpec {
    Kind kind = Kind::Spd;
    int n = 0;          // matrix side length N
    int beta = 1;       // 1, 2, or 4 for Spd; fixed 2 for Unitary entries
    int dim = 0;        // manifold dimension d
    double kappa = 0.0; // curvature bound parameter
    double diameter = 0.0;

    /// Positive definite family: d = beta N(N-1)/2 + N, kappa = 1/sqrt(2),
    /// infinite diameter.
    static GeometrySpec spd(int n, int beta);

    /// Unitary group: d = N^2, kappa = 0, diameter sqrt(N) pi.
    static GeometrySpec unitary(int n);

    int pair_count() const { return n * (n - 1) / 2; }
};

/**
 * Unit tangent direction at the base point. For the positive definite family
 * s is Hermitian with tr(s^2) = 1; for the unitary group s is skew-Hermitian
 * with tr(s s†) = 1 and we store s = i h for Hermitian h. In both cases sigma
 * holds the N defining eigenvalues (of s, respectively of h), sorted
 * descending, so the curvature values kappa_ij = (sigma_i - sigma_j)/2 are
 * nonnegative for i < j.
 */
struct Direction {
    Mat s;
    std::vector<double> sigma;
};

struct Point {
    Mat x;
};

/// Identity matrix point, the default base.
Point identity_point(const GeometrySpec& geom);

/**
 * Uniform direction on the unit sphere of the tangent space. Real case:
 * s = (t + tT)/2 for t with independent standard normal entries. Complex
 * case: entries a + ib with a, b independent mean 0 variance 1/2 normals,
 * h = (t + t†)/2; the positive definite family uses s = h, the unitary group
 * s = i h. The result is normalized and its eigenvalues recorded.
 *
 * Throws Unsupported for beta = 4 (no quaternion point arithmetic).
 */
Direction sample_direction(const GeometrySpec& geom, Rng& rng);

/// Direction built from a caller-supplied tangent matrix (Hermitian for the
/// positive definite family, skew-Hermitian for the unitary group). The
/// matrix is normalized to the unit sphere and its eigenvalues extracted.
Direction direction_from_matrix(const GeometrySpec& geom, const Mat& tangent);

/**
 * log |det A(r, s)|, the log volume density in geodesic spherical
 * coordinates, evaluated entirely in the log domain:
 *
 *   positive definite: (N-1) log r + sum_{i<j} beta log(r sinch(kappa_ij r))
 *   unitary:           (N-1) log r + sum_{i<j} 2 log |r sinc(kappa_ij r)|
 *
 * Throws DomainError for r <= 0.
 */
double log_volume_density(const GeometrySpec& geom, double r, const Direction& dir);

/**
 * Riemannian exponential map at an arbitrary base point, realized by
 * re-centering the formulas at the identity: positive definite
 * x = base^{1/2} expm(r s) base^{1/2}, unitary x = base expm(r s).
 */
Point exp_map(const GeometrySpec& geom, double r, const Direction& dir, const Point& base);

/**
 * Riemannian distance. Positive definite family:
 * sqrt(tr(log(x^{-1/2} y x^{-1/2}))^2). Unitary group: Euclidean norm of the
 * eigen-angles of x†y taken in (-pi, pi].
 *
 * Throws NotPositiveDefinite or NotUnitary on invalid points.
 */
double distance(const GeometrySpec& geom, const Point& x, const Point& y);

/// First radius at which geodesic spherical coordinates break down:
/// +infinity for the positive definite family, pi / max|sigma_i| for U(N).
double cut_function(const GeometrySpec& geom, const Direction& dir);

/// Eigen-angles of a unitary point, each in (-pi, pi], unsorted.
std::vector<double> eigen_angles(const GeometrySpec& geom, const Point& x);

/// JSON round trip for points: {"n": int, "beta": int, "re": [[...]], "im": [[...]]},
/// with "im" omitted when beta = 1.
std::string point_to_json(const GeometrySpec& geom, const Point& x);
Point point_from_json(const GeometrySpec& geom, const std::string& text);

}  // namespace curs
