#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "symground/bessel.hpp"

using namespace symg;
using std::numbers::pi;
using Catch::Approx;

TEST_CASE("half-integer orders are closed forms") {
    REQUIRE(bessel_k(0.5, 1.0) == Approx(std::sqrt(pi / 2.0) * std::exp(-1.0)).epsilon(1e-15));
    REQUIRE(bessel_k(0.5, 1.0) == Approx(0.4610685044).epsilon(1e-9));
    REQUIRE(bessel_k(1.5, 1.0) == Approx(0.9221370089).epsilon(1e-9));
    REQUIRE(bessel_k(1.5, 1.0) == Approx(2.0 * bessel_k(0.5, 1.0)).epsilon(1e-15));
}

TEST_CASE("K_1 matches the standard library across the range") {
    for (double z = 1e-3; z < 30.0; z *= 1.35) {
        const double ref = std::cyl_bessel_k(1.0, z);
        REQUIRE(bessel_k(1.0, z) == Approx(ref).epsilon(5e-9));
    }
}

TEST_CASE("K_1 branches agree at the seam") {
    const double s = detail::kBesselK1Seam;
    for (double z : {s - 1e-9, s, s + 1e-9}) {
        const double a = detail::bessel_k1_series(z);
        const double b = detail::bessel_k1_asymptotic(z);
        REQUIRE(std::abs(a - b) <= 1e-9);
        REQUIRE(std::abs(a - b) <= 1e-7 * std::abs(a));
    }
}

TEST_CASE("asymptotic form: K_nu(z) sqrt(z) e^z / sqrt(pi/2) -> 1") {
    // K_1 at z = 50 is within 1e-2 of the leading term; the other orders
    // approach it like 1 + (4 nu^2 - 1)/(8z)
    const double r1 = bessel_k(1.0, 50.0) * std::sqrt(50.0) * std::exp(50.0) / std::sqrt(pi / 2.0);
    REQUIRE(r1 == Approx(1.0).margin(1e-2));
    for (double nu : {0.5, 1.5}) {
        const double z = 200.0;
        const double r = bessel_k(nu, z) * std::sqrt(z) * std::exp(z) / std::sqrt(pi / 2.0);
        REQUIRE(r == Approx(1.0).margin(1e-2));
    }
}

TEST_CASE("domain errors") {
    REQUIRE_THROWS_AS(bessel_k(1.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(bessel_k(1.0, -2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(bessel_k(2.0, 1.0), std::invalid_argument);
}
