#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "greedyldp/explorer.hpp"
#include "greedyldp/ldp.hpp"
#include "greedyldp/quadrature.hpp"
#include "greedyldp/rng.hpp"

using namespace greedyldp;

TEST_CASE("very negative momentum: trajectory hugs the clock, exit near 1") {
    for (double a0 : {-50.0, -300.0, -700.0}) {
        const auto traj = make_ham_trajectory(1.0, a0);
        CHECK(traj.exit_time > 0.999);
        CHECK(traj.exit_time <= 1.5); // the guard may push just past 1
        for (double t : {0.1, 0.5, 0.9}) {
            CHECK(traj.x(t) >= t - 1e-12); // x > t holds with an e^{alpha0} gap below doubles
            CHECK(traj.x(t) < t + 1e-3);
            CHECK(std::isfinite(traj.alpha(t)));
            CHECK(traj.alpha(t) < 0.0);
        }
        CHECK(std::isfinite(rate_F(1.0, a0).value.value()));
    }
}

TEST_CASE("large positive momentum: either a clean exit or a clean error") {
    // the exit collides with the singular time as alpha0 grows; beyond the
    // representable window the constructor must refuse, not hang or NaN
    for (double a0 : {5.0, 10.0, 20.0, 40.0, 100.0}) {
        try {
            const auto traj = make_ham_trajectory(1.0, a0);
            REQUIRE(traj.singular_time.has_value());
            CHECK(traj.exit_time > 0.0);
            CHECK(traj.exit_time <= *traj.singular_time);
            CHECK(std::isfinite(traj.x(traj.exit_time * 0.5)));
        } catch (const std::runtime_error&) {
            // acceptable past the guard band
        }
    }
    CHECK_THROWS_AS(make_ham_trajectory(1.0, 1e9), std::invalid_argument);
    CHECK_THROWS_AS(make_ham_trajectory(1.0, -701.0), std::invalid_argument);
}

TEST_CASE("exit-time inversion near the ends of (t*, 1)") {
    const double ts = t_star(1.0);
    for (double T : {ts + 1e-6, 0.99, 0.999}) {
        const double a0 = invert_exit_time(1.0, T);
        CHECK(a0 < 0.0);
        CHECK(make_ham_trajectory(1.0, a0).exit_time == Catch::Approx(T).margin(1e-8));
    }
    for (double T : {0.05, 0.01, ts - 1e-6}) {
        const double a0 = invert_exit_time(1.0, T);
        CHECK(a0 > 0.0);
        CHECK(make_ham_trajectory(1.0, a0).exit_time == Catch::Approx(T).margin(1e-8));
    }
    // far below anything attainable even at the +700 bracket end
    CHECK_THROWS_AS(invert_exit_time(1.0, 1e-300), std::domain_error);
}

TEST_CASE("tail rates stay finite near their hypothesis boundaries") {
    const double ts = t_star(1.0); // ~0.693
    const auto near_one = tail_rate(1.0, (1.0 - ts) - 1e-9, TailSide::upper);
    CHECK(std::isfinite(near_one.value.value()));
    CHECK(near_one.value.value() > 0.0);
    const auto near_zero = tail_rate(1.0, ts - 1e-4, TailSide::lower);
    CHECK(std::isfinite(near_zero.value.value()));
    CHECK(near_zero.value.value() > 0.0);
}

TEST_CASE("graph sampling and exploration at n = 100000") {
    const long n = 100000;
    const ModelParams params(1.0, n);
    const Graph g = sample_er_graph(params, derive_seed(2024, 0));
    // edge count ~ Binomial(n(n-1)/2, c/n), mean ~ (n-1)/2
    const double mean = (static_cast<double>(n) - 1.0) / 2.0;
    const double sd = std::sqrt(mean);
    CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) < 6.0 * sd);

    const auto rec = greedy_explore(g, derive_seed(2024, 1));
    const auto chk = verify_independent_maximal(g, rec.active);
    CHECK(chk.independent);
    CHECK(chk.maximal);
    // stop-time proportion near t*(1) = log 2
    CHECK(std::abs(static_cast<double>(rec.stop_time) / static_cast<double>(n) - t_star(1.0)) <
          0.01);
}

TEST_CASE("explorations resample independently on a fixed graph") {
    const Graph g = sample_er_graph(ModelParams(2.0, 500), derive_seed(5, 0));
    const auto a = greedy_explore(g, derive_seed(5, 1));
    const auto b = greedy_explore(g, derive_seed(5, 3));
    const auto a2 = greedy_explore(g, derive_seed(5, 1));
    CHECK(a.active == a2.active); // same selection stream, same run
    CHECK(a.active != b.active);  // different stream, different order
    CHECK(verify_independent_maximal(g, b.active).maximal);
}

TEST_CASE("property: admissible piecewise-linear paths match a quadrature route") {
    // random paths with slopes >= 1 (finite admissible), closed-form cost vs
    // adaptive quadrature in t, over random (c, knots)
    Xoshiro256pp rng(derive_seed(777, 0));
    for (int trial = 0; trial < 40; ++trial) {
        const double c = 0.3 + 3.0 * rng.uniform_pos();
        const int segs = 1 + static_cast<int>(rng.uniform_below(5));
        std::vector<double> ts{0.0}, vs{0.0};
        for (int s = 0; s < segs; ++s) {
            const double dt = (1.0 - ts.back()) * (0.2 + 0.6 * rng.uniform_pos());
            const double max_dv = 1.0 - vs.back();
            // slope in [1, 4], capped by the remaining room
            double dv = dt * (1.0 + 3.0 * rng.uniform_pos());
            if (dv > max_dv) dv = max_dv;
            if (dv < dt) break; // would fall below slope 1, close the path instead
            ts.push_back(ts.back() + dt);
            vs.push_back(vs.back() + dv);
        }
        // close onto the boundary at slope 3/2 (always fits: 1 - v <= 1 - t)
        if (vs.back() < 1.0) {
            ts.push_back(ts.back() + (1.0 - vs.back()) / 1.5);
            vs.push_back(1.0);
        }
        if (ts.size() < 2) continue;
        const ScaledPath path(ts, vs, Interpolation::linear);
        const auto r = path_rate(c, path);
        REQUIRE(r.value.is_finite());
        REQUIRE(r.value.value() >= 0.0);

        double oracle = 0.0;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            const double slope = (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]);
            const double upper = vs[i + 1] == 1.0 ? ts[i + 1] - 1e-13 : ts[i + 1];
            oracle += integrate_gk15(
                          [&, i, slope](double t) {
                              const double x = vs[i] + slope * (t - ts[i]);
                              return cost_L(c, std::min(x, 1.0 - 1e-16), slope).value();
                          },
                          ts[i], upper, 1e-12, 1L << 16)
                          .value;
        }
        REQUIRE(r.value.value() == Catch::Approx(oracle).margin(1e-7));
    }
}
