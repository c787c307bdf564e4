#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "greedyldp/fluid.hpp"
#include "greedyldp/ldp.hpp"
#include "greedyldp/quadrature.hpp"

using namespace greedyldp;

TEST_CASE("path_rate of the identity path is c/2") {
    for (double c : {0.5, 1.0, 2.0}) {
        const auto r = path_rate(c, ScaledPath({0.0, 1.0}, {0.0, 1.0}, Interpolation::linear));
        CHECK(r.value.value() == Catch::Approx(c / 2.0).margin(1e-14));
    }
}

TEST_CASE("path_rate of the densely sampled fluid limit is near zero") {
    for (double c : {0.5, 1.0, 3.0}) {
        std::vector<double> ts, vs;
        for (long j = 0; j <= 10000; ++j) {
            const double t = static_cast<double>(j) / 10000.0;
            ts.push_back(t);
            vs.push_back(fluid_z(c, t));
        }
        const auto r = path_rate(c, ScaledPath(std::move(ts), std::move(vs), Interpolation::linear));
        REQUIRE(r.value.is_finite());
        CHECK(r.value.value() < 1e-6);
    }
}

TEST_CASE("path_rate of min(2t,1) against an independent quadrature") {
    const double c = 1.0;
    const auto r = path_rate(c, ScaledPath({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0}, Interpolation::linear));
    REQUIRE(r.value.is_finite());

    // oracle: adaptive quadrature of L(2t, 2) over [0, 1/2], cross-checked
    // against a 10x tighter pass before use
    const auto f = [c](double t) {
        const double x = std::min(2.0 * t, 1.0 - 1e-16);
        return cost_L(c, x, 2.0).value();
    };
    const auto coarse = integrate_gk15(f, 0.0, 0.5, 1e-10);
    const auto fine = integrate_gk15(f, 0.0, 0.5, 1e-12, 1L << 18);
    REQUIRE(std::abs(coarse.value - fine.value) < 1e-8);
    CHECK(r.value.value() == Catch::Approx(coarse.value).margin(1e-8));
    CHECK(r.value.value() == Catch::Approx(0.25).margin(1e-10)); // analytic value at c = 1
}

TEST_CASE("subdividing segments does not change the rate") {
    const double c = 1.5;
    const auto r1 = path_rate(c, ScaledPath({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0}, Interpolation::linear));
    std::vector<double> ts, vs;
    for (int j = 0; j <= 50; ++j) {
        ts.push_back(0.5 * j / 50.0);
        vs.push_back(static_cast<double>(j) / 50.0);
    }
    ts.push_back(1.0);
    vs.push_back(1.0);
    const auto r2 = path_rate(c, ScaledPath(std::move(ts), std::move(vs), Interpolation::linear));
    CHECK(r1.value.value() == Catch::Approx(r2.value.value()).margin(1e-10));
}

TEST_CASE("inadmissible paths cost +infinity") {
    const double c = 1.0;
    // slope below 1 while under the boundary
    CHECK(path_rate(c, ScaledPath({0.0, 1.0}, {0.0, 0.5}, Interpolation::linear)).value.is_infinite());
    // stall below the boundary
    CHECK(path_rate(c, ScaledPath({0.0, 0.4, 1.0}, {0.0, 0.4, 1.0}, Interpolation::linear))
              .value.is_infinite() == false); // slope 1 then 1: admissible
    CHECK(path_rate(c, ScaledPath({0.0, 0.2, 0.8, 1.0}, {0.0, 0.2, 0.2, 0.4}, Interpolation::linear))
              .value.is_infinite());
    // a jump
    CHECK(path_rate(c, ScaledPath({0.0, 0.5, 0.5, 1.0}, {0.0, 0.4, 0.8, 1.0}, Interpolation::linear))
              .value.is_infinite());
    // moving while absorbed: 1 -> 1 is fine, but any motion at x = 1 is not
    // representable in a nondecreasing [0,1] path, so nothing to test beyond
    // the constant tail being free:
    const auto tail = path_rate(
        c, ScaledPath({0.0, 0.5, 0.7, 1.0}, {0.0, 1.0, 1.0, 1.0}, Interpolation::linear));
    const auto no_tail = path_rate(c, ScaledPath({0.0, 0.5}, {0.0, 1.0}, Interpolation::linear));
    CHECK(tail.value.value() == Catch::Approx(no_tail.value.value()).margin(1e-15));
}

TEST_CASE("a path whose knots stop below 1 before t=1 stalls and costs +inf") {
    // admissible up to (0.5, 0.6), then implicitly constant below the boundary
    CHECK(path_rate(1.0, ScaledPath({0.0, 0.5}, {0.0, 0.6}, Interpolation::linear))
              .value.is_infinite());
    // but ending exactly on the boundary early is free afterwards
    CHECK(path_rate(1.0, ScaledPath({0.0, 0.5}, {0.0, 1.0}, Interpolation::linear))
              .value.is_finite());
}

TEST_CASE("step paths are jump paths") {
    const ScaledPath step({0.0, 0.5}, {0.0, 1.0}, Interpolation::step);
    CHECK_THROWS_AS(path_rate(1.0, step), std::domain_error);
    CHECK(path_rate(1.0, step, true).value.is_infinite());
}

TEST_CASE("final partial absorption segment is charged the minimal traversal") {
    // fast leg at slope 2, then a drift onto the boundary at slope 1/3: the
    // closing segment is charged c (1-x0)^2 / 2
    const double c = 2.0;
    const double x0 = 0.8;
    const auto r = path_rate(c, ScaledPath({0.0, 0.4, 1.0}, {0.0, x0, 1.0}, Interpolation::linear));
    REQUIRE(r.value.is_finite());
    const auto lead = integrate_gk15(
        [c](double t) { return cost_L(c, 2.0 * t, 2.0).value(); }, 0.0, 0.4, 1e-12);
    const double absorb = 0.5 * c * (1.0 - x0) * (1.0 - x0);
    CHECK(r.value.value() == Catch::Approx(lead.value + absorb).margin(1e-9));
}
