#include <doctest.h>

#include <cmath>

#include "curs/errors.hpp"
#include "curs/numkern.hpp"
#include "curs/rng.hpp"

using namespace curs;

namespace {

Mat random_hermitian(int n, Rng& rng, bool complex_entries) {
    Mat t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t(i, j) = complex_entries ? cplx(rng.normal(), rng.normal()) : cplx(rng.normal(), 0.0);
    return hermitize(t);
}

double reconstruction_error(const Mat& m, const EigH& e) {
    const int n = m.n;
    Mat rec(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rec(i, j) += e.lambda[k] * e.vectors(i, k) * std::conj(e.vectors(j, k));
    return max_abs(rec - m);
}

}  // namespace

TEST_CASE("eig_hermitian diagonalizes simple matrices") {
    Mat d(2);
    d(0, 0) = 2.0;
    d(1, 1) = 5.0;
    EigH e = eig_hermitian(d);
    CHECK(e.lambda[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.lambda[1] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(max_abs(e.vectors - Mat::identity(2)) < 1e-12);

    Mat offdiag(2);
    offdiag(0, 1) = 1.0;
    offdiag(1, 0) = 1.0;
    e = eig_hermitian(offdiag);
    CHECK(e.lambda[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e.lambda[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eig_hermitian reconstructs random symmetric and Hermitian input") {
    Rng rng(101);
    for (int rep = 0; rep < 20; ++rep) {
        Mat m = random_hermitian(6, rng, rep % 2 == 1);
        EigH e = eig_hermitian(m);
        CHECK(reconstruction_error(m, e) < 1e-10);
        for (std::size_t k = 1; k < e.lambda.size(); ++k) CHECK(e.lambda[k - 1] <= e.lambda[k]);
        CHECK(max_abs(adjoint(e.vectors) * e.vectors - Mat::identity(6)) < 1e-10);
    }
}

TEST_CASE("expm_hermitian on exact cases and spectra") {
    CHECK(max_abs(expm_hermitian(Mat(3)) - Mat::identity(3)) < 1e-15);

    Mat d(2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    Mat ed = expm_hermitian(d);
    CHECK(std::real(ed(0, 0)) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
    CHECK(std::real(ed(1, 1)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    CHECK(std::abs(ed(0, 1)) < 1e-14);

    Rng rng(7);
    Mat m = random_hermitian(5, rng, true);
    EigH em = eig_hermitian(m);
    EigH ee = eig_hermitian(expm_hermitian(m));
    for (int k = 0; k < 5; ++k)
        CHECK(ee.lambda[k] == doctest::Approx(std::exp(em.lambda[k])).epsilon(1e-10));
}

TEST_CASE("logm_spd inverts expm_hermitian") {
    Rng rng(8);
    for (int rep = 0; rep < 10; ++rep) {
        Mat m = random_hermitian(4, rng, rep % 2 == 1);
        const double scale = max_abs(m);
        if (scale > 3.0)
            for (auto& v : m.a) v *= 3.0 / scale;
        CHECK(max_abs(logm_spd(expm_hermitian(m)) - m) < 1e-9);
    }
    CHECK(max_abs(logm_spd(Mat::identity(3))) < 1e-14);

    Mat d(2);
    d(0, 0) = std::exp(2.0);
    d(1, 1) = 1.0;
    Mat ld = logm_spd(d);
    CHECK(std::real(ld(0, 0)) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(ld(1, 1)) < 1e-14);
}

TEST_CASE("logm_spd rejects non positive definite input") {
    Mat near_singular(2);
    near_singular(0, 0) = 1.0;
    near_singular(1, 1) = 1e-14;
    CHECK_THROWS_AS(logm_spd(near_singular), NotPositiveDefinite);

    Mat negative(2);
    negative(0, 0) = 1.0;
    negative(1, 1) = -1.0;
    CHECK_THROWS_AS(logm_spd(negative), NotPositiveDefinite);
}

TEST_CASE("sqrtm_spd squares back to the input") {
    CHECK(max_abs(sqrtm_spd(Mat::identity(4)) - Mat::identity(4)) < 1e-14);

    Mat d(2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    Mat sd = sqrtm_spd(d);
    CHECK(std::real(sd(0, 0)) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::real(sd(1, 1)) == doctest::Approx(3.0).epsilon(1e-13));

    Rng rng(9);
    Mat m = random_hermitian(5, rng, true);
    Mat spd = expm_hermitian(0.5 * m);
    Mat root = sqrtm_spd(spd);
    CHECK(max_abs(root * root - spd) < 1e-10);
}

TEST_CASE("pfaffian on closed form cases") {
    SkewMat two(2);
    two(0, 1) = 3.5;
    two(1, 0) = -3.5;
    CHECK(pfaffian(two) == doctest::Approx(3.5).epsilon(1e-14));

    SkewMat four(4);
    four(0, 1) = 2.0;
    four(1, 0) = -2.0;
    four(2, 3) = -0.75;
    four(3, 2) = 0.75;
    CHECK(pfaffian(four) == doctest::Approx(2.0 * -0.75).epsilon(1e-13));

    SkewMat odd(3);
    CHECK_THROWS_AS(pfaffian(odd), OddDimension);
}

TEST_CASE("pfaffian squared equals the determinant up to n = 12") {
    Rng rng(12);
    for (int n = 2; n <= 12; n += 2) {
        for (int rep = 0; rep < 4; ++rep) {
            SkewMat a(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
            a.antisymmetrize();

            // |det a| from the spectrum of the Hermitian matrix i a.
            Mat ia(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) ia(i, j) = cplx(0.0, 1.0) * a(i, j);
            EigH e = eig_hermitian(ia);
            double log_det = 0.0;
            for (double l : e.lambda) log_det += std::log(std::abs(l));

            const double pf = pfaffian(a);
            CHECK(std::abs(pf * pf - std::exp(log_det)) <= 1e-8 * std::exp(log_det));
        }
    }
}

TEST_CASE("sinch and sinc scalar values") {
    CHECK(sinch(0.0) == 1.0);
    CHECK(sinc(0.0) == 1.0);
    CHECK(std::abs(sinc(3.14159265358979323846)) < 1e-15);
    CHECK(sinch(1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
    CHECK(sinc(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
    // Reference value of sinh(1e-5)/1e-5 beyond double refinement:
    // 1 + 1e-10/6 + 1e-20/120.
    CHECK(sinch(1e-5) == doctest::Approx(1.0000000000166666667).epsilon(1e-15));
    CHECK(sinc(1e-5) == doctest::Approx(0.9999999999833333333).epsilon(1e-15));
}

TEST_CASE("sinch and sinc are continuous across the series switchover") {
    const double at = 1e-4;
    for (double side : {-1.0, 1.0}) {
        const double below = side * at * (1.0 - 1e-9);
        const double above = side * at * (1.0 + 1e-9);
        CHECK(std::abs(sinch(below) - sinch(above)) < 1e-14);
        CHECK(std::abs(sinc(below) - sinc(above)) < 1e-14);
    }
}

TEST_CASE("erf and normal distribution helpers") {
    CHECK(curs::erf(0.0) == 0.0);
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm_cdf(1.0) == doctest::Approx(0.8413447460685429486).epsilon(1e-13));
    CHECK(norm_cdf(-1.0) == doctest::Approx(1.0 - 0.8413447460685429486).epsilon(1e-12));
    CHECK(norm_pdf(0.0) == doctest::Approx(0.3989422804014326779).epsilon(1e-14));
    CHECK(norm_pdf(1.5) == doctest::Approx(std::exp(-1.125) * 0.3989422804014326779).epsilon(1e-13));
    CHECK(curs::erf(0.5) == doctest::Approx(0.5204998778130465377).epsilon(1e-13));
    for (double x : {0.3, 0.9, 1.7, 2.8}) {
        CHECK(curs::erf(-x) == doctest::Approx(-curs::erf(x)).epsilon(1e-15));
        CHECK(std::abs(norm_cdf(x) + norm_cdf(-x) - 1.0) < 1e-14);
    }
}

TEST_CASE("rng basics") {
    Rng rng(5);
    for (int k = 0; k < 10000; ++k) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
    Rng a(11);
    Rng b(11);
    for (int k = 0; k < 100; ++k) CHECK(a.uniform() == b.uniform());
    Rng w0 = Rng::worker_stream(11, 0);
    Rng w1 = Rng::worker_stream(11, 1);
    CHECK(w0.uniform() != w1.uniform());
}
