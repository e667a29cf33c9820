#include "ccsl/constants.hpp"
#include "ccsl/special.hpp"
#include "fixtures/reference_values.hpp"
#include "unit/test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ccsl;
using ccsl::test::rel_diff;

TEST_SUITE("special") {

TEST_CASE("erfcx matches high-precision fixtures") {
    for (const auto& [x, ref] : fixtures::kErfcx) {
        CAPTURE(x);
        CHECK(rel_diff(special::erfcx(x), ref) <= 1e-12);
    }
}

TEST_CASE("erfcx is finite, positive and decreasing up to 1e9") {
    double prev = special::erfcx(0.0);
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 1; i <= 600; ++i) {
        const double x = std::pow(10.0, -3.0 + 12.0 * i / 600.0);
        const double v = special::erfcx(x);
        CAPTURE(x);
        REQUIRE(std::isfinite(v));
        REQUIRE(v > 0.0);
        REQUIRE(v < prev);
        prev = v;
    }
}

TEST_CASE("erfcx agrees with the unscaled product where that is safe") {
    for (double x = -5.0; x <= 5.0; x += 0.125) {
        CAPTURE(x);
        CHECK(rel_diff(special::erfcx(x), std::exp(x * x) * std::erfc(x)) <= 1e-13);
    }
}

TEST_CASE("erfcx tends to 1/(sqrt(pi) x)") {
    const double x = 1e12;
    CHECK(rel_diff(special::erfcx(x), 1.0 / (kSqrtPi * x)) <= 1e-15);
}

TEST_CASE("bessel_j1 matches fixtures") {
    for (const auto& [x, ref] : fixtures::kBesselJ1) {
        CAPTURE(x);
        const double v = special::bessel_j1(x);
        CHECK(std::abs(v - ref) <= 1e-12 * std::abs(ref) + 1e-16);
        CHECK(special::bessel_j1(-x) == -v);
    }
}

TEST_CASE("scaled modified Bessel functions match fixtures") {
    for (const auto& [x, ref] : fixtures::kScaledBesselI0) {
        CAPTURE(x);
        CHECK(rel_diff(special::bessel_i0e(x), ref) <= 1e-12);
    }
    for (const auto& [x, ref] : fixtures::kScaledBesselI1) {
        CAPTURE(x);
        CHECK(rel_diff(special::bessel_i1e(x), ref) <= 1e-12);
    }
}

TEST_CASE("one_minus_i0e_plus_i1e avoids cancellation") {
    // 1 - e^{-x}(I0 + I1) = x/2 - x^2/4 + O(x^3)
    const double x = 1e-9;
    CHECK(rel_diff(special::one_minus_i0e_plus_i1e(x), x / 2 - x * x / 4) <= 1e-12);
    for (double y : {0.5, 3.0, 30.0, 70.0, 1e4}) {
        CAPTURE(y);
        const double direct = 1.0 - special::bessel_i0e(y) - special::bessel_i1e(y);
        CHECK(rel_diff(special::one_minus_i0e_plus_i1e(y), direct) <= 1e-12);
    }
}

TEST_CASE("elementary kernels") {
    CHECK(special::sinc(0.0) == 1.0);
    CHECK(rel_diff(special::sinc(2.5), std::sin(2.5) / 2.5) <= 1e-15);
    CHECK(special::sphere_kernel(0.0) == 1.0);
    for (double u : {1e-3, 0.3, 0.99, 1.0, 2.0, 17.0}) {
        CAPTURE(u);
        const double direct = 3.0 * (std::sin(u) - u * std::cos(u)) / (u * u * u);
        const double tol = u < 0.01 ? 1e-9 : 1e-12; // direct form cancels for small u
        CHECK(rel_diff(special::sphere_kernel(u), direct) <= tol);
    }
    CHECK(rel_diff(special::sphere_kernel(1e-4), 1.0 - 1e-8 / 10.0) <= 1e-15);
    CHECK(special::sphere_kernel(1e-6) == doctest::Approx(1.0 - 1e-13).epsilon(1e-16));
    CHECK(special::jinc(0.0) == 1.0);
    for (double u : {0.01, 1.0, 4.0, 40.0}) {
        CAPTURE(u);
        CHECK(std::abs(special::jinc(u) - 2.0 * std::cyl_bessel_j(1.0, u) / u) <= 1e-12);
    }
}

TEST_CASE("phonon suppression matches fixtures") {
    for (const auto& [x, ref] : fixtures::kPhononSuppression) {
        CAPTURE(x);
        CHECK(rel_diff(special::phonon_suppression(x), ref) <= 1e-12);
    }
}

TEST_CASE("phonon suppression is monotone and bounded") {
    double prev = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = std::pow(10.0, -4.0 + 14.0 * i / 400.0);
        const double v = special::phonon_suppression(x);
        CAPTURE(x);
        REQUIRE(v > 0.0);
        REQUIRE(v <= 1.0);
        REQUIRE(v >= prev);
        prev = v;
    }
    // Large-x expansion 1 - 5/(2 x^2).
    CHECK(rel_diff(special::phonon_suppression(1e4), 1.0 - 2.5e-8) <= 1e-14);
    // Small-x limit (2/3) x^2.
    CHECK(rel_diff(special::phonon_suppression(1e-6), 2.0 / 3.0 * 1e-12) <= 1e-5);
}

}
