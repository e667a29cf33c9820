#include "ccsl/constants.hpp"
#include "ccsl/diffusion.hpp"
#include "ccsl/error.hpp"
#include "unit/test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

using namespace ccsl;
using ccsl::test::rel_diff;

namespace {

double eta_point(double m, double rc) {
    return m * m / (2.0 * kConstants.m0 * kConstants.m0 * rc * rc);
}

// Independent estimate of g for an axis-aligned cube of side L measured
// along x. |mu~|^2 factorizes, so g is a product of three one-dimensional
// integrals, each estimated by importance sampling:
//   I_par  = int sinc^2(kL/2) k^2 exp(-k^2 rc^2) dk, sampled from the Gaussian,
//   I_perp = int sinc^2(kL/2) exp(-k^2 rc^2) dk,    sampled from sinc^2 itself.
double monte_carlo_cube_factor(double L, double rc, std::size_t samples) {
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> gauss(0.0, 1.0 / (std::sqrt(2.0) * rc));
    double par = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double s = std::sin(0.5 * gauss(rng) * L);
        par += s * s;
    }
    par *= 4.0 / (L * L) * kSqrtPi / rc / static_cast<double>(samples);

    // Draws x with density sin^2(x)/(pi x^2) by rejection from a Cauchy
    // proposal; acceptance sin^2(x)(1 + x^2) / (2 x^2) <= 1.
    std::cauchy_distribution<double> cauchy(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double perp = 0.0;
    for (std::size_t i = 0; i < samples;) {
        const double x = cauchy(rng);
        const double sx = x == 0.0 ? 1.0 : std::sin(x) / x;
        if (unif(rng) > 0.5 * sx * sx * (1.0 + x * x))
            continue;
        const double k = 2.0 * x / L;
        perp += std::exp(-k * k * rc * rc);
        ++i;
    }
    perp *= kTwoPi / L / static_cast<double>(samples);

    // eta / eta_point = 2 rc^5 / pi^{3/2} * I_par * I_perp^2
    return 2.0 * std::pow(rc, 5) / kPi32 * par * perp * perp;
}

// Two point masses 2a apart along the measurement axis.
double two_point_factor(double separation, double rc) {
    const double q = separation * separation / (rc * rc);
    return 0.5 * (1.0 + (1.0 - 0.5 * q) * std::exp(-0.25 * q));
}

} // namespace

TEST_SUITE("diffusion") {

TEST_CASE("point mass gives the point-particle value") {
    for (double rc : {1e-9, 1e-7, 1e-3}) {
        const auto d = MassDistribution::point_mass(3.0);
        CHECK(geometry_factor(d, rc).eta == 1.0);
        CHECK(rel_diff(eta_reduced(d, rc).eta, eta_point(3.0, rc)) <= 1e-15);
    }
}

TEST_CASE("eta is linear in lambda and vanishes at zero") {
    const auto d = MassDistribution::sphere(1e-6, 2000);
    const double base = eta(d, {1.0, 1e-7}).eta;
    CHECK(eta(d, {0.0, 1e-7}).eta == 0.0);
    CHECK(rel_diff(eta(d, {3.5e-9, 1e-7}).eta, 3.5e-9 * base) <= 1e-15);
    CHECK_THROWS_AS(eta(d, {-1.0, 1e-7}), Error);
    CHECK_THROWS_AS(eta(d, {1.0, 0.0}), Error);
    CHECK_THROWS_AS(eta_reduced(d, 1e-7, 0.5), Error);
}

TEST_CASE("small bodies approach the point-mass limit") {
    for (double rc : {1e-9, 1e-7, 1e-5, 1e-3}) {
        const double R = rc / 100.0;
        const double g = geometry_factor(MassDistribution::sphere(R, 1000), rc).eta;
        CAPTURE(rc);
        CHECK(g <= 1.0);
        CHECK(g > 0.99);
    }
}

TEST_CASE("geometry factor lies in (0, 1] and decreases with size") {
    double prev = 1.0;
    for (int i = 0; i < 40; ++i) {
        const double R = 1e-9 * std::pow(10.0, 0.25 * i);
        const double g = geometry_factor(MassDistribution::sphere(R, 1000), 1e-7).eta;
        CAPTURE(R);
        REQUIRE(g > 0.0);
        REQUIRE(g <= 1.0);
        REQUIRE(g < prev);
        prev = g;
    }
}

TEST_CASE("closed forms agree with direct k-space quadrature") {
    const double rc = 1e-7;
    const double tol = 1e-9;
    SUBCASE("sphere") {
        for (double R : {2e-8, 1e-7, 5e-7, 3e-6}) {
            const auto d = MassDistribution::sphere(R, 3000);
            CAPTURE(R);
            CHECK(rel_diff(eta_reduced(d, rc, tol).eta, eta_reduced_kspace(d, rc, tol).eta) <= 1e-7);
        }
    }
    SUBCASE("cuboid, tilted") {
        const Mat3 r = rotation(normalized(Vec3{1, 2, 0.5}), 0.7);
        for (double L : {5e-8, 3e-7, 1e-6}) {
            const auto d = rotated(MassDistribution::cuboid(L, 0.6 * L, 1.3 * L, 2000), r);
            CAPTURE(L);
            CHECK(rel_diff(eta_reduced(d, rc, tol).eta, eta_reduced_kspace(d, rc, tol).eta) <= 1e-7);
        }
    }
    SUBCASE("cylinder, oblique to the measurement axis") {
        for (double R : {5e-8, 4e-7, 1e-6}) {
            const auto d = MassDistribution::cylinder(R, 1.7 * R, 2200, normalized(Vec3{1, 1, 1}));
            CAPTURE(R);
            CHECK(rel_diff(eta_reduced(d, rc, tol).eta, eta_reduced_kspace(d, rc, tol).eta) <= 1e-7);
        }
    }
}

TEST_CASE("cube factor matches a Monte-Carlo estimate") {
    // The LISA Pathfinder cube, far outside the k-space quadrature's reach.
    const double L = 4.6e-2;
    const double rc = 1e-7;
    const double g = geometry_factor(MassDistribution::cube(L, 19800), rc).eta;
    const double mc = monte_carlo_cube_factor(L, rc, 400000);
    CHECK(rel_diff(g, mc) <= 5e-3);
    // Leading asymptotics: (2 rc / L)^2 * (sqrt(pi) 2 rc / L)^2.
    const double z = L / (2.0 * rc);
    CHECK(rel_diff(g, kPi / (z * z * z * z)) <= 1e-5);
}

TEST_CASE("cube orientation about the measurement axis does not matter") {
    const auto d = MassDistribution::cube(2e-6, 2000);
    const double g0 = geometry_factor(d, 1e-7).eta;
    const double g1 = geometry_factor(rotated(d, rotation({1, 0, 0}, 0.4)), 1e-7).eta;
    CHECK(rel_diff(g0, g1) <= 1e-12);
}

TEST_CASE("two-point composite reproduces the interference formula") {
    const double rc = 1e-7;
    for (double sep : {0.3e-7, 1e-7, 2.5e-7, 6e-7, 5e-6}) {
        const Vec3 half{0.5 * sep, 0, 0};
        const MassDistribution d({Body{PointMass{}, 1.0, half}, Body{PointMass{}, 1.0, half * -1.0}});
        CAPTURE(sep);
        CHECK(std::abs(geometry_factor(d, rc).eta - two_point_factor(sep, rc)) <= 1e-8);
    }
}

TEST_CASE("separated parts add incoherently") {
    const double rc = 1e-7;
    const auto one = MassDistribution::cube(4.6e-2, 19800);
    const MassDistribution two({Body{Cuboid{4.6e-2, 4.6e-2, 4.6e-2}, 19800, {-0.188, 0, 0}},
                                Body{Cuboid{4.6e-2, 4.6e-2, 4.6e-2}, 19800, {0.188, 0, 0}}});
    CHECK(rel_diff(eta_reduced(two, rc).eta, 2.0 * eta_reduced(one, rc).eta) <= 1e-12);
}

TEST_CASE("overlapping composite agrees with k-space") {
    const double rc = 1e-7;
    const MassDistribution d({Body{Sphere{1e-7}, 3000, {-0.8e-7, 0, 0}},
                              Body{Cuboid{1.5e-7, 1e-7, 1e-7}, 2000, {1.2e-7, 0.3e-7, 0}}});
    CHECK(rel_diff(eta_reduced(d, rc, 1e-8).eta, eta_reduced_kspace(d, rc, 1e-8).eta) <= 1e-6);
}

TEST_CASE("equal-volume sphere and cube agree for bodies small against r_C") {
    const double L = 1e-5;
    const double R = L * std::cbrt(3.0 / (4.0 * kPi));
    const double rc = 1e-3;
    const double es = eta_reduced(MassDistribution::sphere(R, 1000), rc).eta;
    const double ec = eta_reduced(MassDistribution::cube(L, 1000), rc).eta;
    CHECK(rel_diff(es, ec) <= 1e-3);
}

TEST_CASE("k-space quadrature refuses hopeless oscillation counts") {
    try {
        eta_reduced_kspace(MassDistribution::cube(1.0, 1000), 1e-9);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::QuadratureNotConverged);
    }
}

TEST_CASE("cache returns identical values and is thread-safe") {
    EtaCache cache;
    const auto d = MassDistribution::sphere(1e-6, 2000);
    const double direct = eta_reduced(d, 1e-7).eta;
    std::vector<std::thread> pool;
    std::vector<double> got(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] { got[t] = cache.eta_reduced(d, 1e-7).eta; });
    for (auto& t : pool)
        t.join();
    for (double v : got)
        CHECK(v == direct);
    CHECK(cache.size() == 1);
    CHECK(cache.eta_reduced(d, 1e-7).eta == direct);
    CHECK(cache.hits() >= 1);
    cache.eta_reduced(d, 2e-7);
    CHECK(cache.size() == 2);
}

}
