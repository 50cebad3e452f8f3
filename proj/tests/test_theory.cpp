#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "curs/engine.hpp"
#include "curs/errors.hpp"
#include "curs/theory.hpp"
#include "oracles.hpp"

using namespace curs;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.7071067811865475244;

}  // namespace

TEST_CASE("sphere surface areas") {
    CHECK(surface_area(0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(surface_area(1) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(surface_area(2) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(surface_area(5) == doctest::Approx(kPi * kPi * kPi).epsilon(1e-13));
    CHECK_THROWS_AS(surface_area(-1), DomainError);
}

TEST_CASE("log_radial_integral on analytic integrals") {
    // Bounded: integral of sin over (0, pi) is 2.
    const double bounded =
        log_radial_integral([](double r) { return std::log(std::sin(r)); }, 0.0, kPi);
    CHECK(bounded == doctest::Approx(std::log(2.0)).epsilon(1e-9));

    // Unbounded: Gaussian tail integral sqrt(pi/2).
    const double unbounded = log_radial_integral(
        [](double r) { return -0.5 * r * r; }, 0.0, std::numeric_limits<double>::infinity());
    CHECK(unbounded == doctest::Approx(0.5 * std::log(kPi / 2.0)).epsilon(1e-9));

    // A narrow bump far from the origin must not lose mass to windowing:
    // integral of exp(-(r-50)^2/(2*0.1^2)) is 0.1 sqrt(2 pi).
    const double narrow = log_radial_integral(
        [](double r) { return -0.5 * (r - 50.0) * (r - 50.0) / 0.01; }, 0.0,
        std::numeric_limits<double>::infinity());
    CHECK(narrow == doctest::Approx(std::log(0.1 * std::sqrt(2.0 * kPi))).epsilon(1e-9));
}

TEST_CASE("proposal constant closed form matches quadrature") {
    for (int n : {2, 4, 6}) {
        GeometrySpec geom = GeometrySpec::spd(n, 1);
        for (double sigma : {0.05, 0.3, 1.0, 2.0}) {
            RadialLaw law = RadialLaw::generalized_gaussian(2.0, sigma);
            const double closed = z_kappa_closed(geom, law);
            const double quad = z_kappa_quad(geom, law);
            CHECK(std::abs(closed - quad) <= 1e-8 * closed);
        }
    }
}

TEST_CASE("proposal constant degenerate and limiting cases") {
    // Formal d = 1 case: the geometric factor disappears and the constant is
    // Omega_0 times the plain integral of f, here 2 sigma sqrt(pi/2).
    GeometrySpec flat;
    flat.kind = Kind::Spd;
    flat.n = 1;
    flat.beta = 1;
    flat.dim = 1;
    flat.kappa = kInvSqrt2;
    flat.diameter = std::numeric_limits<double>::infinity();
    const double sigma = 0.7;
    RadialLaw law = RadialLaw::generalized_gaussian(2.0, sigma);
    CHECK(z_kappa_quad(flat, law) ==
          doctest::Approx(2.0 * sigma * std::sqrt(kPi / 2.0)).epsilon(1e-9));
    CHECK(z_kappa_closed(flat, law) ==
          doctest::Approx(2.0 * sigma * std::sqrt(kPi / 2.0)).epsilon(1e-12));

    // sigma -> 0 recovers the Euclidean Gaussian constant
    // Omega_{d-1} 2^{d/2-1} Gamma(d/2) sigma^d.
    GeometrySpec g4 = GeometrySpec::spd(4, 1);
    const double small = 1e-3;
    RadialLaw tiny = RadialLaw::generalized_gaussian(2.0, small);
    const double ratio = z_kappa_closed(g4, tiny) / std::pow(small, g4.dim);
    const double euclid =
        surface_area(g4.dim - 1) * std::pow(2.0, g4.dim / 2.0 - 1.0) * std::tgamma(g4.dim / 2.0);
    CHECK(std::abs(ratio - euclid) <= 1e-3 * euclid);

    CHECK_THROWS_AS(z_kappa_closed(g4, RadialLaw::generalized_gaussian(3.0, 0.5)),
                    UnsupportedClosedForm);
    CHECK_THROWS_AS(z_kappa_closed(GeometrySpec::unitary(2), law), UnsupportedClosedForm);
}

TEST_CASE("target constant closed form") {
    // n = 2 collapses to scalar factors:
    // (pi s^2/2) 2^{1/2} Omega_0 Omega_1 e^{-s^2/4} e^{s^2/2} erf(s/2).
    const double s = 0.5;
    const double expected = (kPi * s * s / 2.0) * std::sqrt(2.0) * 2.0 * (2.0 * kPi) *
                            std::exp(-s * s / 4.0) * std::exp(s * s / 2.0) * curs::erf(s / 2.0);
    CHECK(z_target_spd(2, s) == doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(z_target_spd(3, 0.5), OddN);
    CHECK_THROWS_AS(z_target_spd(4, 0.0), DomainError);

    // The Pfaffian input is skew-symmetric because erf is odd.
    for (double sig : {0.1, 1.0}) {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double lij =
                    std::exp((i * i + j * j) * sig * sig / 2.0) * curs::erf((j - i) * sig / 2.0);
                const double lji =
                    std::exp((i * i + j * j) * sig * sig / 2.0) * curs::erf((i - j) * sig / 2.0);
                CHECK(std::abs(lij + lji) < 1e-14 * std::max(1.0, std::abs(lij)));
            }
        }
    }
}

TEST_CASE("target constant agrees with the Monte Carlo estimator") {
    Rng rng(71);
    for (double sigma : {0.2, 0.6}) {
        GeometrySpec geom = GeometrySpec::spd(4, 1);
        RadialLaw law = RadialLaw::generalized_gaussian(2.0, sigma);
        McEstimate mc = z_target_mc(geom, law, 4000, rng);
        const double closed = z_target_spd(4, sigma);
        CHECK(std::abs(mc.value - closed) <= 3.0 * mc.stderr_);
        CHECK(mc.stderr_ < 0.05 * closed);
    }

    // Complex family: finite and statistically stable.
    GeometrySpec g22 = GeometrySpec::spd(2, 2);
    McEstimate complex_z =
        z_target_mc(g22, RadialLaw::generalized_gaussian(2.0, 0.5), 10000, rng);
    CHECK(std::isfinite(complex_z.value));
    CHECK(complex_z.value > 0.0);
    CHECK(complex_z.stderr_ / complex_z.value < 0.01);
}

TEST_CASE("unitary volume from the Monte Carlo constant matches the sampler") {
    GeometrySpec u2 = GeometrySpec::unitary(2);
    RadialLaw flat = RadialLaw::uniform();
    Rng rng(72);
    McEstimate vol = z_target_mc(u2, flat, 2000, rng);
    const double exact = std::pow(2.0 * kPi, 3.0);  // Riemannian volume of U(2)
    CHECK(std::abs(vol.value - exact) <= 3.0 * vol.stderr_);

    const double z0 = z_kappa_quad(u2, flat);
    CHECK(z0 == doctest::Approx(2.0 * std::pow(kPi, 6.0)).epsilon(1e-9));

    CursConfig cfg;
    cfg.geom = u2;
    cfg.law = flat;
    cfg.variant = Variant::CutLocus;
    cfg.base = identity_point(u2);
    cfg.seed = 73;
    Rng erng(73);
    AcceptanceStats st = estimate_acceptance(cfg, 100000, erng);
    const double predicted = vol.value / z0;
    CHECK(std::abs(st.pi_hat - predicted) <= 3.0 * (st.stderr_ + vol.stderr_ / z0));
}

TEST_CASE("expected squared distance values and limits") {
    CHECK(delta_of_sigma(4, 1.0) == doctest::Approx(13.3238).epsilon(0.0075));
    CHECK(std::abs(delta_of_sigma(4, 1.0) - 13.3) < 0.1);
    CHECK(delta_of_sigma(6, 0.5) == doctest::Approx(5.9056).epsilon(0.002));

    // sigma -> 0: delta / sigma^2 -> d.
    const double small = 1e-3;
    CHECK(std::abs(delta_of_sigma(4, small) / (small * small) - 10.0) < 0.01);

    CHECK_THROWS_AS(delta_of_sigma(5, 0.5), OddN);
}

TEST_CASE("volume density ODE oracle") {
    // Single-block sanity: in the two dimensional extremal direction the
    // closed form is log r + log(sinh(kappa r)/kappa).
    GeometrySpec g2 = GeometrySpec::spd(2, 1);
    Mat s2(2);
    s2(0, 0) = kInvSqrt2;
    s2(1, 1) = -kInvSqrt2;
    Direction extremal = direction_from_matrix(g2, s2);
    const double r2 = 2.0;
    const double closed2 = std::log(r2) + std::log(std::sinh(kInvSqrt2 * r2) / kInvSqrt2);
    CHECK(jacobi_ode_det(g2, r2, extremal, 10000) == doctest::Approx(closed2).epsilon(1e-10));

    Rng rng(74);
    for (const GeometrySpec& geom :
         {GeometrySpec::spd(3, 1), GeometrySpec::spd(3, 2), GeometrySpec::spd(2, 1)}) {
        for (int rep = 0; rep < 25; ++rep) {
            Direction dir = sample_direction(geom, rng);
            const double r = 0.2 + 3.0 * rng.uniform();
            const double ode = jacobi_ode_det(geom, r, dir, 10000);
            const double closed = log_volume_density(geom, r, dir);
            CHECK(std::abs(ode - closed) <= 1e-6 * std::max(1.0, std::abs(closed)));
        }
    }
    for (const GeometrySpec& geom : {GeometrySpec::unitary(2), GeometrySpec::unitary(3)}) {
        for (int rep = 0; rep < 25; ++rep) {
            Direction dir = sample_direction(geom, rng);
            const double r = (0.1 + 0.85 * rng.uniform()) * cut_function(geom, dir);
            const double ode = jacobi_ode_det(geom, r, dir, 10000);
            const double closed = log_volume_density(geom, r, dir);
            CHECK(std::abs(ode - closed) <= 1e-6 * std::max(1.0, std::abs(closed)));
        }
    }

    // Quaternion family exponents enter the ODE blocks with multiplicity 4.
    GeometrySpec g24 = GeometrySpec::spd(2, 4);
    Mat s4(2);
    s4(0, 0) = kInvSqrt2;
    s4(1, 1) = -kInvSqrt2;
    Direction qdir = direction_from_matrix(g24, s4);
    const double rq = 1.5;
    CHECK(jacobi_ode_det(g24, rq, qdir, 10000) ==
          doctest::Approx(log_volume_density(g24, rq, qdir)).epsilon(1e-8));
}

TEST_CASE("acceptance probability theory bundle") {
    TheoryConstants tc = spd_theory(4, 0.4);
    CHECK(std::abs(tc.pi - 0.3430) < 0.005);
    CHECK(tc.z > 0.0);
    CHECK(tc.z_kappa > tc.z);
    CHECK(tc.pi == doctest::Approx(tc.z / tc.z_kappa).epsilon(1e-12));
    CHECK(tc.delta == doctest::Approx(delta_of_sigma(4, 0.4)).epsilon(1e-12));
    CHECK(!tc.z_method.empty());
    CHECK(!tc.z_kappa_method.empty());

    // Pi lies in (0, 1] and decreases along the sigma grid.
    double last = 1.0 + 1e-12;
    for (double sigma : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0}) {
        TheoryConstants t = spd_theory(4, sigma);
        CHECK(t.pi > 0.0);
        CHECK(t.pi <= 1.0);
        CHECK(t.pi < last);
        last = t.pi;
    }
    CHECK(spd_theory(4, 0.05).pi > 0.97);

    CHECK_THROWS_AS(spd_theory(3, 0.5), OddN);
}
