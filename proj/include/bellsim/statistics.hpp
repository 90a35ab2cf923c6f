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
/**
 * @file
 * Derived observables over outcome distributions: correlations, the CHSH
 * combination, a no-signaling audit, and seeded outcome sampling with a
 * Pearson goodness-of-fit self test.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bellsim/engine.hpp"
#include "bellsim/photon.hpp"

namespace bellsim {

enum class Outcome : std::uint8_t { pp = 0, pm = 1, mp = 2, mm = 3 };

inline constexpr std::array<Outcome, 4> kOutcomes{Outcome::pp, Outcome::pm,
                                                  Outcome::mp, Outcome::mm};

/// "++", "+-", "-+", "--".
std::string to_string(Outcome o);

struct OutcomeDistribution {
    /// Indexed by Outcome.
    std::array<double, 4> p{};
    double p_inconclusive = 0.0;
    AnalyzerSettings settings;

    static OutcomeDistribution from(const OutcomeProbabilities &probs,
                                    const AnalyzerSettings &settings);

    [[nodiscard]] double operator[](Outcome o) const {
        return p[static_cast<std::size_t>(o)];
    }
    [[nodiscard]] double conclusive() const;

    /// Conclusive probabilities divided by their sum. Throws
    /// std::domain_error if nothing is conclusive.
    [[nodiscard]] std::array<double, 4> renormalized() const;

    /// Throws InvariantError if an entry is below -1e-12 or the total is not
    /// 1 within 1e-10.
    void validate() const;
};

/// E = P(++) + P(--) - P(+-) - P(-+) over the conclusive outcomes.
double correlation(const OutcomeDistribution &dist);

/// Produces the outcome distribution for a pair of analyzer angles.
using DistributionSource =
    std::function<OutcomeDistribution(const AnalyzerSettings &)>;

/// Full pipeline with the local Hamiltonians of `base` at the requested
/// angles.
DistributionSource local_engine(ExperimentConfig base,
                                EvolutionMethod method = EvolutionMethod::exact);

/// Full pipeline with the nonlocal station-B coupling of strength `mu`.
DistributionSource nonlocal_engine(ExperimentConfig base, double mu);

struct ChshAngles {
    double a = 0.0;
    double a_prime = 0.0;
    double b = 0.0;
    double b_prime = 0.0;
};

struct ChshResult {
    double s = 0.0;
    /// E(a,b), E(a,b'), E(a',b), E(a',b').
    std::array<double, 4> correlations{};
};

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
ChshResult chsh(const ChshAngles &angles, const DistributionSource &engine);

/// k * pi / resolution for k = 0, ..., resolution - 1.
std::vector<double> angle_grid(std::size_t resolution);

struct NoSignalingReport {
    /// max |P_A(+) - 1/2| and max |P_B(+) - 1/2| over the grid.
    double max_marginal_deviation_a = 0.0;
    double max_marginal_deviation_b = 0.0;
    /// max over alpha of the spread of P_A(+) across beta, and vice versa.
    double max_remote_dependence_a = 0.0;
    double max_remote_dependence_b = 0.0;
    std::size_t points = 0;
    double tolerance = 0.0;
    bool passed = false;

    [[nodiscard]] double max_deviation() const;
};

/// Evaluates `engine` on every (alpha, beta) of grid x grid.
NoSignalingReport no_signaling_audit(const DistributionSource &engine,
                                     const std::vector<double> &grid,
                                     double tolerance = 1e-10);

struct OutcomeSequence {
    AnalyzerSettings settings;
    std::vector<Outcome> outcomes;
    std::uint64_t seed = 0;

    [[nodiscard]] std::array<std::size_t, 4> counts() const;
};

/**
 * Draws `n` i.i.d. outcomes from the conclusive part of `dist`.
 *
 * The generator is std::mt19937_64 seeded with `seed`. Each draw takes one
 * 64-bit output, keeps its top 53 bits as u in [0, 1) and selects the first
 * outcome (order ++, +-, -+, --) whose cumulative probability exceeds u.
 */
OutcomeSequence sample(const OutcomeDistribution &dist, std::size_t n,
                       std::uint64_t seed);

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
};

/// Pearson statistic over outcomes with probability above 1e-12. Requires at
/// least 1000 draws and an expected count of at least 5 in every live cell
/// (std::invalid_argument otherwise).
ChiSquare chi_square_self_test(const OutcomeSequence &seq,
                               const OutcomeDistribution &dist);

/// 99% quantile of the chi-square distribution for 1 to 3 degrees of freedom.
double chi_square_critical_99(std::size_t dof);

} // namespace bellsim
