#include "doctest.h"
#include "oracles.hpp"

#include "fts/comparison.hpp"

#include <cmath>
#include <random>

using namespace fts;

TEST_CASE("barrier integral: power-law closed form") {
    // G(v) = v^{1-a}/(1-a); cross-checked against adaptive quadrature below.
    CHECK(barrier_integral(ComparisonNonlinearity::power(0.5), 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(barrier_integral(ComparisonNonlinearity::power(0.75), 16.0) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(barrier_integral(ComparisonNonlinearity::power(0.3), 0.0) == 0.0);
}

TEST_CASE("barrier integral: quadrature route matches the closed form") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> alpha_dist(0.1, 0.9);
    std::uniform_real_distribution<double> v_dist(0.01, 20.0);
    for (int i = 0; i < 50; ++i) {
        const double alpha = alpha_dist(rng);
        const double v = v_dist(rng);
        const auto g = ComparisonNonlinearity::power(alpha);
        const double exact = std::pow(v, 1.0 - alpha) / (1.0 - alpha);
        CHECK(barrier_integral_quadrature(g, v) == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("barrier integral: strictly increasing and continuous in v") {
    const auto g = ComparisonNonlinearity::power(0.4);
    double prev = 0.0;
    for (int i = 1; i <= 64; ++i) {
        const double v = 0.05 * i;
        const double cur = barrier_integral(g, v);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("barrier integral: tabulated nonlinearity with declared zero exponent") {
    // Samples of g(v) = sqrt(v); the interpolated shape integrates in closed
    // form segment by segment, which is the oracle here.
    const double beta = 0.5;
    std::vector<double> v, gv;
    for (int i = 0; i <= 40; ++i) {
        v.push_back(0.05 * i);
        gv.push_back(std::sqrt(0.05 * i));
    }
    const auto g = ComparisonNonlinearity::table(v, gv, 1.0, beta);

    // First segment is the declared power shape: int_0^{v1} dv / (g1 (v/v1)^b)
    // = v1 / (g1 (1-b)); linear segments give log terms.
    double expected = v[1] / (gv[1] * (1.0 - beta));
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double slope = (gv[i + 1] - gv[i]) / (v[i + 1] - v[i]);
        expected += std::log(gv[i + 1] / gv[i]) / slope;
    }
    CHECK(barrier_integral(g, 2.0) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("barrier integral: divergent reciprocal is reported") {
    // Nearly-linear table near zero with an honest-but-useless declared bound:
    // 1/g behaves like 1/v and the quadrature cannot converge.
    std::vector<double> v{0.0, 1e-9, 1.0, 2.0};
    std::vector<double> gv{0.0, 1e-9, 1.0, 2.0};
    const auto g = ComparisonNonlinearity::table(v, gv, 1.0, 0.999);
    CHECK_THROWS_AS((void)barrier_integral(g, 1.0), Error);
}

TEST_CASE("cumulative gain: presets integrate exactly") {
    const auto indicator = GainFunction::step({0.0, 1.0}, {1.0});
    CHECK(cumulative_gain(indicator, 0.0, 2.0) == doctest::Approx(1.0));
    CHECK(cumulative_gain(indicator, 0.0, 0.0) == 0.0);

    const auto decay = GainFunction::exponential(0.2, -0.5);
    CHECK(cumulative_gain(decay, 0.0, kInfinity) == doctest::Approx(0.4).epsilon(1e-12));

    // Additivity over adjacent intervals.
    const auto table = GainFunction::table({0.0, 1.0, 3.0}, {0.5, 1.5, 0.0});
    const double whole = cumulative_gain(table, 0.0, 3.0);
    const double split = cumulative_gain(table, 0.0, 1.7) + cumulative_gain(table, 1.7, 3.0);
    CHECK(whole == doctest::Approx(split).epsilon(1e-14));
}

TEST_CASE("settling time bound: closed-form instances") {
    SUBCASE("constant gain") {
        RateSpec rate{GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)};
        const auto cert = settling_time_bound(rate, 0.0, 1.0);
        REQUIRE(cert.bounded());
        CHECK(*cert.t_bound == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(cert.barrier == doctest::Approx(2.0));
        CHECK(cert.tail_mass == kInfinity);
    }
    SUBCASE("exponential gain") {
        RateSpec rate{GainFunction::exponential(0.2, -0.5), ComparisonNonlinearity::power(0.5)};
        const auto cert = settling_time_bound(rate, 0.0, 0.01);
        REQUIRE(cert.bounded());
        CHECK(*cert.t_bound == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
    }
    SUBCASE("v0 = 0 settles immediately") {
        RateSpec rate{GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)};
        const auto cert = settling_time_bound(rate, 3.0, 0.0);
        REQUIRE(cert.bounded());
        CHECK(*cert.t_bound == 3.0);
    }
    SUBCASE("insufficient tail mass is unbounded, not an error") {
        RateSpec rate{GainFunction::exponential(0.2, -0.5), ComparisonNonlinearity::power(0.5)};
        // G(1) = 2 > 0.4 tail.
        const auto cert = settling_time_bound(rate, 0.0, 1.0);
        CHECK_FALSE(cert.bounded());
        CHECK(cert.tail_mass == doctest::Approx(0.4));
    }
    SUBCASE("flat cumulative gain returns the infimum-side root") {
        // c = 1 on [0,1], 0 on [1,2], 1 on [2,5]; target barrier exactly 1.
        RateSpec rate{GainFunction::step({0.0, 1.0, 2.0, 5.0}, {1.0, 0.0, 1.0}),
                      ComparisonNonlinearity::power(0.5)};
        const auto cert = settling_time_bound(rate, 0.0, 0.25); // G = 2 sqrt(0.25) = 1
        REQUIRE(cert.bounded());
        CHECK(*cert.t_bound == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("settling time bound: certificate invariants") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> alpha_dist(0.1, 0.9);
    std::uniform_real_distribution<double> v_dist(0.01, 4.0);
    for (int i = 0; i < 50; ++i) {
        RateSpec rate{oracles::random_step_gain(rng, 40.0, 0.1, 2.0),
                      ComparisonNonlinearity::power(alpha_dist(rng))};
        const double v0 = v_dist(rng);
        const auto cert = settling_time_bound(rate, 0.0, v0);
        if (!cert.bounded()) {
            CHECK(cert.tail_mass <= cert.barrier);
            continue;
        }
        CHECK(*cert.t_bound >= 0.0);
        // Residual of the defining equation.
        CHECK(cumulative_gain(rate.c, 0.0, *cert.t_bound) ==
              doctest::Approx(cert.barrier).epsilon(1e-8));
    }
}

TEST_CASE("settling time bound: monotone in v0 and in the gain") {
    const auto g = ComparisonNonlinearity::power(0.5);
    RateSpec weak{GainFunction::constant(0.5), g};
    RateSpec strongc{GainFunction::constant(1.0), g};
    double prev = 0.0;
    for (double v0 : {0.1, 0.5, 1.0, 2.0}) {
        const auto cert = settling_time_bound(weak, 0.0, v0);
        REQUIRE(cert.bounded());
        CHECK(*cert.t_bound >= prev);
        prev = *cert.t_bound;
        const auto faster = settling_time_bound(strongc, 0.0, v0);
        REQUIRE(faster.bounded());
        CHECK(*faster.t_bound <= *cert.t_bound + 1e-12);
    }
}

TEST_CASE("comparison solution: closed form, settling and invariance") {
    RateSpec rate{GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)};
    CHECK(comparison_solution(rate, 0.0, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(comparison_solution(rate, 0.0, 1.0, 3.0) == 0.0); // past T = 2
    CHECK(comparison_solution(rate, 0.0, 0.0, 5.0) == 0.0); // origin invariant

    const auto cert = settling_time_bound(rate, 0.0, 1.0);
    REQUIRE(cert.bounded());
    CHECK(comparison_solution(rate, 0.0, 1.0, *cert.t_bound) <= 1e-6);
    CHECK(comparison_solution(rate, 0.0, 1.0, 0.99 * *cert.t_bound) > 0.0);
}

TEST_CASE("comparison solution: semigroup property") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> alpha_dist(0.15, 0.85);
    std::uniform_real_distribution<double> v_dist(0.05, 3.0);
    for (int i = 0; i < 40; ++i) {
        RateSpec rate{oracles::random_step_gain(rng, 20.0, 0.0, 1.5),
                      ComparisonNonlinearity::power(alpha_dist(rng))};
        const double v0 = v_dist(rng);
        std::uniform_real_distribution<double> t_dist(0.0, 10.0);
        double s = t_dist(rng), t = t_dist(rng);
        if (s > t) std::swap(s, t);
        const double direct = comparison_solution(rate, 0.0, v0, t);
        const double relayed = comparison_solution(rate, s, comparison_solution(rate, 0.0, v0, s), t);
        CHECK(direct == doctest::Approx(relayed).epsilon(1e-7));
    }
}

TEST_CASE("comparison solution: general path matches the closed form on 200 random instances") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> alpha_dist(0.1, 0.9);
    std::uniform_real_distribution<double> v_dist(0.05, 5.0);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = alpha_dist(rng);
        const double v0 = v_dist(rng);
        RateSpec rate{oracles::random_step_gain(rng, 30.0, 0.1, 2.0),
                      ComparisonNonlinearity::power(alpha)};
        const auto cert = settling_time_bound(rate, 0.0, v0);
        const double horizon = cert.bounded() ? *cert.t_bound : 30.0;
        const double t = 0.9 * horizon * frac(rng);
        const double closed = oracles::power_comparison_closed_form(
            v0, alpha, cumulative_gain(rate.c, 0.0, t));
        const double numeric = comparison_solution_general(rate, 0.0, v0, t);
        CHECK(numeric == doctest::Approx(closed).epsilon(1e-7));
    }
}

TEST_CASE("gronwall power check") {
    RateSpec rate{GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)};
    const double alpha = 0.5;
    const double v0 = 1.0;

    SampledSignal phi;
    for (int i = 0; i <= 100; ++i) {
        const double t = 2.0 * i / 100.0; // up to the settling time
        phi.times.push_back(t);
        phi.values.push_back(comparison_solution(rate, 0.0, v0, t));
    }

    SUBCASE("equality case passes") {
        const auto res = check_gronwall_power(phi, rate.c, alpha, 1e-9);
        CHECK(res.pass);
    }
    SUBCASE("slightly dominated signal passes") {
        SampledSignal w = phi;
        for (double& v : w.values) v *= 1.0 - 1e-3;
        const auto res = check_gronwall_power(w, rate.c, alpha, 1e-9);
        CHECK(res.pass);
    }
    SUBCASE("constant positive signal fails against positive mass") {
        SampledSignal w;
        for (int i = 0; i <= 10; ++i) {
            w.times.push_back(0.1 * i);
            w.values.push_back(v0);
        }
        const auto res = check_gronwall_power(w, rate.c, alpha, 1e-9);
        CHECK_FALSE(res.pass);
        REQUIRE(res.violation_time.has_value());
        CHECK(*res.violation_time > 0.0);
    }
    SUBCASE("malformed samples are rejected") {
        SampledSignal w;
        w.times = {0.0, 0.5, 0.4};
        w.values = {1.0, 0.5, 0.4};
        CHECK_THROWS_AS((void)check_gronwall_power(w, rate.c, alpha, 1e-9), Error);
        w.times = {0.0, 0.5, 0.9};
        w.values = {1.0, -0.5, 0.4};
        CHECK_THROWS_AS((void)check_gronwall_power(w, rate.c, alpha, 1e-9), Error);
    }
}

TEST_CASE("comparison check: slack integration dominates, excess fails") {
    RateSpec rate{GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)};

    SUBCASE("phi itself passes") {
        SampledSignal w;
        for (int i = 0; i <= 50; ++i) {
            const double t = 1.5 * i / 50.0;
            w.times.push_back(t);
            w.values.push_back(comparison_solution(rate, 0.0, 1.0, t));
        }
        CHECK(check_comparison(w, rate, 1e-9).pass);
    }
    SUBCASE("fine-step integration with extra decay passes") {
        const auto path = oracles::integrate_scalar_decay(
            [](double) { return 1.0; }, [](double, double) { return 0.01; },
            [](double v) { return std::sqrt(std::max(v, 0.0)); }, 0.0, 1.0, 1.8, {}, 1e-4);
        SampledSignal w;
        for (std::size_t i = 0; i < path.times.size(); i += 100) {
            w.times.push_back(path.times[i]);
            w.values.push_back(path.values[i]);
        }
        CHECK(check_comparison(w, rate, 1e-6).pass);
    }
    SUBCASE("lifted signal fails with the first offending time") {
        SampledSignal w;
        for (int i = 0; i <= 20; ++i) {
            const double t = 1.0 * i / 20.0;
            w.times.push_back(t);
            w.values.push_back(comparison_solution(rate, 0.0, 1.0, t) + (i > 0 ? 0.1 : 0.0));
        }
        const auto res = check_comparison(w, rate, 1e-6);
        CHECK_FALSE(res.pass);
        REQUIRE(res.violation_time.has_value());
        CHECK(*res.violation_time == doctest::Approx(0.05));
    }
}

TEST_CASE("random dominated paths always pass the comparison check") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> alpha_dist(0.2, 0.8);
    std::uniform_real_distribution<double> slack_dist(0.0, 0.3);
    for (int i = 0; i < 30; ++i) {
        const double alpha = alpha_dist(rng);
        RateSpec rate{oracles::random_step_gain(rng, 10.0, 0.2, 1.5),
                      ComparisonNonlinearity::power(alpha)};
        const double slack = slack_dist(rng);
        const auto path = oracles::integrate_scalar_decay(
            [&](double t) { return rate.c(t); }, [slack](double, double) { return slack; },
            [alpha](double v) { return std::pow(std::max(v, 0.0), alpha); }, 0.0, 1.0, 6.0,
            rate.c.abscissae(), 2e-4);
        SampledSignal w;
        for (std::size_t k = 0; k < path.times.size(); k += 200) {
            w.times.push_back(path.times[k]);
            w.values.push_back(path.values[k]);
        }
        CHECK(check_comparison(w, rate, 1e-6).pass);
    }
}
