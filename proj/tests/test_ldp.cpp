#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "greedyldp/ldp.hpp"
#include "greedyldp/selfcheck/checks.hpp"
#include "greedyldp/selfcheck/oracles.hpp"

using namespace greedyldp;

TEST_CASE("cost_L branch structure") {
    CHECK(cost_L(1.0, 0.0, 1.0).value() == 1.0);            // c(1-x) on the beta = 1 branch
    CHECK(cost_L(2.5, 1.0, 0.0).value() == 0.0);            // absorbed boundary
    CHECK(cost_L(1.0, 0.0, 2.0).value() == Catch::Approx(0.0).margin(1e-15)); // zero-cost slope
    CHECK(cost_L(1.0, 0.5, 0.5).is_infinite());
    CHECK(cost_L(1.0, 0.5, -1.0).is_infinite());
    CHECK(cost_L(1.0, 1.0, 1.0).is_infinite());
    CHECK_THROWS_AS(cost_L(1.0, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cost_L(0.0, 0.5, 2.0), std::invalid_argument);
    // continuity into beta = 1 from above
    CHECK(cost_L(1.0, 0.3, 1.0 + 1e-12).value() == Catch::Approx(0.7).margin(1e-9));
}

TEST_CASE("hamiltonian_H values") {
    for (double c : {0.5, 1.0, 3.0})
        for (double x : {0.0, 0.3, 0.9}) CHECK(hamiltonian_H(c, x, 0.0) == 0.0);
    CHECK(hamiltonian_H(1.0, 1.0, 2.3) == 0.0);
    CHECK(hamiltonian_H(1.0, 0.0, 1.0) == Catch::Approx(std::exp(1.0)).margin(1e-14));
}

TEST_CASE("poisson_rate values") {
    CHECK(poisson_rate(2.0, 2.0).value() == 0.0);
    CHECK(poisson_rate(1.0, 2.0).value() == Catch::Approx(2.0 * std::log(2.0) - 1.0).margin(1e-15));
    CHECK(poisson_rate(0.7, 0.0).value() == 0.7);
    CHECK(poisson_rate(1.0, -1e-9).is_infinite());
    CHECK_THROWS_AS(poisson_rate(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("cost_L beta>1 branch coincides with the Poisson rate, bitwise") {
    for (double c : {0.5, 1.0, 2.0})
        for (double x : {0.0, 0.25, 0.7})
            for (double beta : {1.01, 1.5, 3.0, 7.0})
                CHECK(cost_L(c, x, beta).value() == poisson_rate(c * (1 - x), beta - 1).value());
}

TEST_CASE("make_ham_trajectory: fluid case") {
    const auto traj = make_ham_trajectory(1.0, 0.0);
    CHECK(traj.exit_time == Catch::Approx(std::log(2.0)).margin(1e-12));
    CHECK(traj.k0 == 0.0);
    CHECK_FALSE(traj.singular_time.has_value());
    CHECK(traj.x(0.2) == Catch::Approx(fluid_z(1.0, 0.2)).margin(1e-15));
    CHECK(traj.alpha(0.4) == 0.0);
}

TEST_CASE("make_ham_trajectory: structural invariants") {
    for (double c : {0.5, 1.0, 3.0}) {
        for (double a0 : {-3.0, -1.0, -0.1, 0.1, 0.5, 1.0, 2.0}) {
            const auto traj = make_ham_trajectory(c, a0);
            CHECK(traj.k0 < 1.0);
            CHECK((traj.k0 < 0.0) == (a0 < 0.0));
            CHECK(traj.exit_time > 0.0);
            CHECK(traj.exit_time <= 1.0);
            if (a0 > 0.0) {
                REQUIRE(traj.singular_time.has_value());
                CHECK(traj.exit_time <= *traj.singular_time);
            }
            CHECK(std::abs(traj.x(0.0)) < 1e-12);
            CHECK(traj.alpha(0.0) == Catch::Approx(a0).margin(1e-12));
            CHECK(traj.x(traj.exit_time) == Catch::Approx(1.0).margin(1e-10));
        }
    }
    CHECK_THROWS_AS(make_ham_trajectory(1.0, 701.0), std::invalid_argument);
}

TEST_CASE("closed form satisfies the Hamiltonian ODE pair (central differences)") {
    const double h = 1e-6;
    const auto traj = make_ham_trajectory(1.0, -1.0);
    for (int i = 1; i < 40; ++i) {
        const double t = traj.exit_time * i / 41.0;
        const double xd = (traj.x(t + h) - traj.x(t - h)) / (2 * h);
        const double ad = (traj.alpha(t + h) - traj.alpha(t - h)) / (2 * h);
        const double a = traj.alpha(t);
        CHECK(std::abs(xd - (1.0 + 1.0 * (1.0 - traj.x(t)) * std::exp(a))) < 1e-6);
        CHECK(std::abs(ad - 1.0 * std::expm1(a)) < 1e-6);
    }
}

TEST_CASE("exit time agrees with an independent adaptive ODE integration") {
    const auto traj = make_ham_trajectory(1.0, 0.5);
    const double t_ode = oracles::ham_ode_exit_time(1.0, 0.5);
    CHECK(std::abs(traj.exit_time - t_ode) < 1e-8);
}

TEST_CASE("Hamiltonian is conserved along extremals") {
    for (double c : {0.5, 3.0}) {
        for (double a0 : {-2.0, 0.5, 2.0}) {
            const auto traj = make_ham_trajectory(c, a0);
            const double h0 = hamiltonian_H(c, 0.0, a0);
            for (int i = 0; i < 500; ++i) {
                const double t = traj.exit_time * i / 500.0;
                REQUIRE(std::abs(hamiltonian_H(c, traj.x(t), traj.alpha(t)) - h0) < 1e-8);
            }
        }
    }
}

TEST_CASE("rate_F: zero exactly at the fluid limit, positive elsewhere") {
    const auto zero = rate_F(1.0, 0.0);
    CHECK(zero.value.value() == 0.0);
    CHECK(zero.optimizer.value() == 0.0);
    CHECK(rate_F(1.0, 0.5).value.value() > 1e-4);
    CHECK(rate_F(1.0, -0.5).value.value() > 1e-4);
}

TEST_CASE("rate_F agrees with the unsimplified cost integral") {
    for (double c : {0.5, 1.0, 3.0}) {
        for (double a0 : {-1.0, -0.5, 0.5, 1.0}) {
            const auto traj = make_ham_trajectory(c, a0);
            const double f1 = rate_F(c, a0).value.value();
            const double f2 = oracles::adaptive_simpson(
                [&](double t) { return cost_L(c, traj.x(t), traj.x_dot(t)).value(); }, 0.0,
                traj.exit_time - 1e-12);
            REQUIRE(std::abs(f1 - f2) < 1e-8);
        }
    }
}

TEST_CASE("invert_exit_time: sign contract and round trip") {
    CHECK(std::abs(invert_exit_time(1.0, t_star(1.0))) < 1e-9);

    const double a_neg = invert_exit_time(1.0, 0.8);
    CHECK(a_neg < 0.0);
    CHECK(make_ham_trajectory(1.0, a_neg).exit_time == Catch::Approx(0.8).margin(1e-9));

    const double a_pos = invert_exit_time(1.0, 0.5);
    CHECK(a_pos > 0.0);
    CHECK(make_ham_trajectory(1.0, a_pos).exit_time == Catch::Approx(0.5).margin(1e-9));

    CHECK_THROWS_AS(invert_exit_time(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(invert_exit_time(1.0, 0.0), std::domain_error);
}

TEST_CASE("tail_rate: composition contract and hypotheses") {
    const double eps = 0.1;
    const auto up = tail_rate(1.0, eps, TailSide::upper);
    const double a0 = invert_exit_time(1.0, t_star(1.0) + eps);
    CHECK(a0 < 0.0);
    CHECK(up.value.value() == rate_F(1.0, a0).value.value());
    CHECK(up.optimizer.value() == a0);

    const auto low = tail_rate(1.0, eps, TailSide::lower);
    CHECK(low.optimizer.value() > 0.0);
    CHECK(low.value.value() > 0.0);

    // continuity: the rate vanishes as eps -> 0+
    CHECK(tail_rate(1.0, 1e-5, TailSide::upper).value.value() < 1e-6);

    // t_star(1) + 0.4 > 1 violates the upper hypothesis
    CHECK_THROWS_AS(tail_rate(1.0, 0.4, TailSide::upper), std::domain_error);
    CHECK_THROWS_AS(tail_rate(1.0, 0.7, TailSide::lower), std::domain_error);
    CHECK_THROWS_AS(tail_rate(1.0, 0.0, TailSide::upper), std::invalid_argument);
}

TEST_CASE("bound_rate compositions") {
    const auto b1 = bound_rate(1.0, BoundKind::sigma1);
    CHECK(b1.value.value() > 0.0);
    CHECK(std::isfinite(b1.value.value()));
    const auto b2 = bound_rate(3.0, BoundKind::sigma2);
    CHECK(b2.value.value() > 0.0);
    // sigma2*(c) = 2 log(c)/c stays above t_star(c) = log(1+c)/c whenever
    // c^2 > 1 + c, so the event stays rare for every admissible c >= 3
    CHECK(bound_rate(40.0, BoundKind::sigma2).value.value() > 0.0);
    CHECK_THROWS_AS(bound_rate(2.9, BoundKind::sigma2), std::domain_error);
    CHECK_THROWS_AS(bound_rate(2.8, BoundKind::sigma1), std::domain_error);
}

TEST_CASE("named invariant checks pass (fast subset)") {
    checks::CheckOptions quick;
    quick.quick = true;
    for (const char* name : {"legendre", "conservation", "el-residual", "monotonicity",
                             "clock-dominance", "rate-zero", "alpha0-continuity", "exit-roundtrip"}) {
        for (const auto& chk : checks::all_checks()) {
            if (std::string(chk.name) != name) continue;
            const auto r = chk.fn(quick);
            INFO(r.name << ": " << r.detail);
            REQUIRE(r.pass);
        }
    }
}
