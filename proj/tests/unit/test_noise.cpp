#include "ccsl/error.hpp"
#include "ccsl/noise.hpp"
#include "ccsl/quadrature.hpp"
#include "unit/test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace ccsl;
using ccsl::test::rel_diff;

TEST_SUITE("noise") {

TEST_CASE("white spectrum is flat") {
    const auto w = NoiseSpec::white();
    CHECK(w.is_white());
    for (double omega : {0.0, 1.0, 1e5, 1e19})
        CHECK(spectrum(w, omega) == 1.0);
}

TEST_CASE("exponential kernel rejects bad cutoffs") {
    CHECK_THROWS_AS(NoiseSpec::exponential(0.0), Error);
    CHECK_THROWS_AS(NoiseSpec::exponential(-3.0), Error);
    CHECK_THROWS_AS(NoiseSpec::exponential(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("white kernel has no pointwise value") {
    try {
        time_correlation(NoiseSpec::white(), 0.1);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::WhiteKernelNotPointwise);
    }
}

TEST_CASE("spectrum is the Fourier transform of the kernel") {
    for (double wc : {1.0, 1e4, 1e15}) {
        const auto n = NoiseSpec::exponential(wc);
        // Unit normalization of the kernel.
        const auto norm = quad::integrate([&](double t) { return time_correlation(n, t); },
                                          0.0, 60.0 / wc);
        CHECK(rel_diff(2.0 * norm.value, 1.0) <= 1e-12);
        for (double ratio : {0.0, 0.3, 1.0, 4.0, 20.0}) {
            const double omega = ratio * wc;
            std::vector<double> bp{0.0};
            for (int i = 1; i <= 60; ++i)
                bp.push_back(i / wc);
            const auto ft = quad::integrate(
                [&](double t) { return 2.0 * time_correlation(n, t) * std::cos(omega * t); }, bp);
            CAPTURE(wc);
            CAPTURE(ratio);
            CHECK(std::abs(ft.value - spectrum(n, omega)) <= 1e-11);
        }
    }
}

TEST_CASE("spectrum is Drude-Lorentz and monotone") {
    const auto n = NoiseSpec::exponential(1e4);
    CHECK(spectrum(n, 1e4) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(spectrum(n, 0.0) == 1.0);
    CHECK(spectrum(n, -2e4) == spectrum(n, 2e4));
    double prev = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double omega = std::pow(10.0, -2.0 + 0.1 * i);
        const double v = spectrum(n, omega);
        REQUIRE(v <= prev);
        REQUIRE(v > 0.0);
        prev = v;
    }
    // Non-decreasing in the cutoff at fixed frequency.
    double last = 0.0;
    for (int i = 0; i < 40; ++i) {
        const double v = spectrum(NoiseSpec::exponential(std::pow(10.0, i * 0.5)), 1e6);
        REQUIRE(v >= last);
        last = v;
    }
}

TEST_CASE("noise text round trip") {
    CHECK(parse_noise("inf").is_white());
    CHECK(parse_noise("white").is_white());
    CHECK(parse_noise("exp:1e4") == NoiseSpec::exponential(1e4));
    CHECK(parse_noise("1e15") == NoiseSpec::exponential(1e15));
    CHECK(format_noise(NoiseSpec::white()) == "inf");
    const auto n = NoiseSpec::exponential(12345.678);
    CHECK(rel_diff(parse_noise(format_noise(n)).omega_c(), n.omega_c()) <= 1e-8);
    CHECK_THROWS_AS(parse_noise("exp:-1"), Error);
    CHECK_THROWS_AS(parse_noise("banana"), Error);
    CHECK_THROWS_AS(parse_noise(""), Error);
}

}
