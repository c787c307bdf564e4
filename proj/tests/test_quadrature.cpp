#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "greedyldp/quadrature.hpp"

using namespace greedyldp;

TEST_CASE("polynomials and smooth integrands") {
    auto r = integrate_gk15([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.value == Catch::Approx(1.0 / 3.0).margin(1e-14));
    CHECK(r.converged);

    r = integrate_gk15([](double x) { return std::sin(x); }, 0.0, std::acos(-1.0));
    CHECK(r.value == Catch::Approx(2.0).margin(1e-12));

    r = integrate_gk15([](double x) { return std::exp(-x * x); }, -6.0, 6.0);
    CHECK(r.value == Catch::Approx(std::sqrt(std::acos(-1.0))).margin(1e-10));
}

TEST_CASE("integrable endpoint singularity converges adaptively") {
    // int_0^1 -log(1-x) dx = 1; nodes never touch the endpoint
    const auto r = integrate_gk15([](double x) { return -std::log1p(-x); }, 0.0, 1.0, 1e-10);
    CHECK(r.value == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("zero-length interval and argument checks") {
    const auto r = integrate_gk15([](double) { return 1.0; }, 0.3, 0.3);
    CHECK(r.value == 0.0);
    CHECK_THROWS_AS(integrate_gk15([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("panel budget cap reports non-convergence instead of spinning") {
    const auto r = integrate_gk15([](double x) { return std::cos(500.0 * x); }, 0.0, 1.0, 1e-14, 4);
    CHECK_FALSE(r.converged);
    CHECK(r.panels >= 1);
}
