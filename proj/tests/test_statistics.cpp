// Copyright 2026 The bellsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bellsim/errors.hpp"
#include "bellsim/statistics.hpp"
#include "oracles.hpp"

using namespace bellsim;

namespace {

constexpr double pi = std::numbers::pi;
const double tsirelson = 2.0 * std::numbers::sqrt2;

OutcomeDistribution ideal(double alpha, double beta) {
    const auto p = oracle::ideal_probabilities(alpha, beta);
    OutcomeDistribution d;
    d.p = {p.pp, p.pm, p.mp, p.mm};
    d.settings = {alpha, beta};
    return d;
}

DistributionSource delta_engine(EvolutionMethod method = EvolutionMethod::exact) {
    return local_engine(ExperimentConfig{}, method);
}

} // namespace

TEST_SUITE("statistics") {

TEST_CASE("correlation from the pipeline") {
    const auto engine = delta_engine();
    CHECK(std::abs(correlation(engine({0.3, 0.3})) - 1.0) <= 1e-10);
    CHECK(std::abs(correlation(engine({0.3 + pi / 4, 0.3}))) <= 1e-10);
    // cos^2 - sin^2 at 30 degrees = 0.75 - 0.25
    CHECK(std::abs(correlation(engine({pi / 6, 0.0})) - 0.5) <= 1e-10);
}

TEST_CASE("correlation properties") {
    std::mt19937_64 rng(61);
    const auto engine = delta_engine(EvolutionMethod::branch);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = oracle::uniform(rng, 0, pi);
        const double b = oracle::uniform(rng, 0, pi);
        const double d = oracle::uniform(rng, -pi, pi);
        const double e = correlation(engine({a, b}));
        CHECK(std::abs(e) <= 1.0 + 1e-12);
        CHECK(std::abs(e - std::cos(2 * (a - b))) <= 1e-10);
        CHECK(std::abs(e - correlation(engine({a + d, b + d}))) <= 1e-10);
    }

    OutcomeDistribution none;
    none.p_inconclusive = 1.0;
    CHECK_THROWS_AS(correlation(none), std::domain_error);
}

TEST_CASE("correlation renormalizes over conclusive outcomes") {
    OutcomeDistribution d;
    d.p = {0.3, 0.1, 0.1, 0.3};
    d.p_inconclusive = 0.2;
    CHECK_NOTHROW(d.validate());
    CHECK(correlation(d) == doctest::Approx(0.5).epsilon(1e-14));

    d.p_inconclusive = 0.3;
    CHECK_THROWS_AS(d.validate(), InvariantError);
}

TEST_CASE("CHSH") {
    const auto engine = delta_engine();
    const auto best = chsh({0.0, pi / 4, pi / 8, 3 * pi / 8}, engine);
    CHECK(std::abs(best.s - tsirelson) <= 1e-6);
    CHECK(std::abs(best.correlations[1] + 1.0 / std::numbers::sqrt2) <= 1e-10);

    const auto equal = chsh({0.4, 0.4, 0.4, 0.4}, engine);
    CHECK(std::abs(equal.s - 2.0) <= 1e-10);

    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 5; ++trial) {
        const double r = oracle::uniform(rng, -pi, pi);
        const auto rotated = chsh({r, pi / 4 + r, pi / 8 + r, 3 * pi / 8 + r}, engine);
        CHECK(std::abs(rotated.s - best.s) <= 1e-10);
    }
}

TEST_CASE("CHSH scan never exceeds the Tsirelson bound") {
    std::mt19937_64 rng(63);
    const auto engine = delta_engine(EvolutionMethod::branch);
    double worst = std::abs(chsh({0.0, pi / 4, pi / 8, 3 * pi / 8}, engine).s);
    for (int trial = 0; trial < 2000; ++trial) {
        const ChshAngles q{oracle::uniform(rng, 0, pi), oracle::uniform(rng, 0, pi),
                           oracle::uniform(rng, 0, pi), oracle::uniform(rng, 0, pi)};
        worst = std::max(worst, std::abs(chsh(q, engine).s));
    }
    CHECK(worst >= 2.82);
    CHECK(worst <= tsirelson + 1e-9);
}

TEST_CASE("no-signaling audit") {
    const auto report = no_signaling_audit(delta_engine(), angle_grid(19));
    CHECK(report.points == 361);
    CHECK(report.passed);
    CHECK(report.max_deviation() <= 1e-10);

    const auto single = no_signaling_audit(delta_engine(), {0.0, pi / 3});
    CHECK(single.max_marginal_deviation_a <= 1e-10);

    const auto q = delta_engine()({0.0, pi / 3}).renormalized();
    CHECK(std::abs(q[0] + q[1] - 0.5) <= 1e-10);
}

TEST_CASE("no-signaling audit of the nonlocal coupling") {
    // The audit measures whatever the nonlocal engine does; the value is
    // reported, not predicted.
    const auto report = no_signaling_audit(nonlocal_engine(ExperimentConfig{}, 1.0), angle_grid(7), 1e-10);
    MESSAGE("nonlocal max no-signaling deviation: " << report.max_deviation());
    CHECK(std::isfinite(report.max_deviation()));
    CHECK(report.passed == (report.max_deviation() <= 1e-10));
}

TEST_CASE("sampling") {
    SUBCASE("certain outcome") {
        OutcomeDistribution d;
        d.p = {1.0, 0.0, 0.0, 0.0};
        const auto seq = sample(d, 500, 9);
        CHECK(seq.counts()[0] == 500);
    }
    SUBCASE("aligned analyzers never disagree") {
        const auto seq = sample(ideal(0.2, 0.2), 100000, 3);
        CHECK(seq.counts()[1] == 0);
        CHECK(seq.counts()[2] == 0);
    }
    SUBCASE("frequencies within four standard errors") {
        const auto dist = ideal(pi / 6, 0.0);
        const std::size_t n = 100000;
        const auto counts = sample(dist, n, 2024).counts();
        for (std::size_t i = 0; i < 4; ++i) {
            const double p = dist.p[i];
            const double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
            CHECK(std::abs(static_cast<double>(counts[i]) / n - p) <= 4 * se);
        }
    }
    SUBCASE("deterministic under the seed") {
        const auto dist = ideal(0.3, 1.0);
        const auto a = sample(dist, 10000, 77);
        const auto b = sample(dist, 10000, 77);
        const auto c = sample(dist, 10000, 78);
        CHECK(a.outcomes == b.outcomes);
        CHECK(a.outcomes != c.outcomes);
    }
    CHECK_THROWS_AS(sample(ideal(0, 0), 0, 1), std::invalid_argument);
}

TEST_CASE("chi-square self test") {
    SUBCASE("exact expected counts give zero") {
        const auto dist = ideal(pi / 6, 0.0);
        OutcomeSequence seq;
        for (const auto [o, k] : {std::pair{Outcome::pp, 375}, {Outcome::pm, 125},
                                  {Outcome::mp, 125}, {Outcome::mm, 375}}) {
            seq.outcomes.insert(seq.outcomes.end(), static_cast<std::size_t>(k), o);
        }
        const auto chi = chi_square_self_test(seq, dist);
        CHECK(chi.statistic <= 1e-20);
        CHECK(chi.dof == 3);
    }
    SUBCASE("rejection rate at the 99% quantile") {
        const auto dist = ideal(pi / 8, 0.0);
        int exceed = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const auto chi = chi_square_self_test(sample(dist, 10000, seed), dist);
            REQUIRE(chi.dof == 3);
            exceed += chi.statistic > 11.34 ? 1 : 0;
        }
        CHECK(exceed <= 5);
    }
    SUBCASE("zero-probability cells are excluded") {
        const auto dist = ideal(0.5, 0.5);
        CHECK(chi_square_self_test(sample(dist, 2000, 5), dist).dof == 1);
    }
    SUBCASE("preconditions") {
        const auto dist = ideal(pi / 8, 0.0);
        CHECK_THROWS_AS(chi_square_self_test(sample(dist, 999, 1), dist), std::invalid_argument);
        OutcomeDistribution rare;
        rare.p = {0.998, 0.001, 0.0005, 0.0005};
        CHECK_THROWS_AS(chi_square_self_test(sample(rare, 1000, 1), rare), std::invalid_argument);
    }
    CHECK(chi_square_critical_99(3) == doctest::Approx(11.344866730144373));
}

}
