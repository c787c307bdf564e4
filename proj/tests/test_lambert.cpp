#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "greedyldp/lambert.hpp"
#include "greedyldp/ldp.hpp"

using namespace greedyldp;

TEST_CASE("lambert_w0 pinned points") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == Catch::Approx(1.0).margin(1e-14));
    // the omega constant
    CHECK(lambert_w0(1.0) == Catch::Approx(0.56714329040978387).margin(1e-13));
    CHECK(lambert_w0(-std::exp(-1.0)) == Catch::Approx(-1.0).margin(1e-7));
    CHECK_THROWS_AS(lambert_w0(-0.4), std::domain_error);
}

TEST_CASE("lambert_w0 satisfies its defining identity over a wide range") {
    for (double lx = -25.0; lx <= 280.0; lx += 0.31) {
        const double x = std::exp(lx);
        const double w = lambert_w0(x);
        REQUIRE(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
    }
    for (double x = -0.3678; x < -1e-6; x *= 0.7) {
        const double w = lambert_w0(x);
        REQUIRE(w >= -1.0);
        REQUIRE(std::abs(w * std::exp(w) - x) <= 1e-12);
    }
}

TEST_CASE("sigma1_star values and domain") {
    CHECK(sigma1_star(1.0) == Catch::Approx(0.72796904633820210).margin(1e-10));
    const double e = std::exp(1.0);
    CHECK(sigma1_star(std::nextafter(e, 0.0)) ==
          Catch::Approx(0.55181916175716348).margin(1e-10));
    CHECK_THROWS_AS(sigma1_star(e), std::domain_error);
    CHECK_THROWS_AS(sigma1_star(3.0), std::domain_error);
    CHECK_THROWS_AS(sigma1_star(0.0), std::domain_error);
    // exceeds the fluid hitting time everywhere on (0, e)
    for (double c = 0.05; c < e; c += 0.05) CHECK(sigma1_star(c) > t_star(c));
}

TEST_CASE("sigma2_star values, domain, monotonicity") {
    CHECK(sigma2_star(3.0) == Catch::Approx(0.73240819244540646).margin(1e-12));
    CHECK(sigma2_star(4.0) == Catch::Approx(std::log(4.0) / 2.0).margin(1e-15));
    CHECK_THROWS_AS(sigma2_star(2.9), std::domain_error);
    double prev = 1.0;
    for (double c = 3.0; c <= 12.0; c += 0.25) {
        const double s = sigma2_star(c);
        CHECK(s > 0.0);
        CHECK(s < 1.0);
        CHECK(s < prev);
        prev = s;
    }
}
