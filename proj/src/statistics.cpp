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
#include "bellsim/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bellsim/errors.hpp"

namespace bellsim {

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::pp:
        return "++";
    case Outcome::pm:
        return "+-";
    case Outcome::mp:
        return "-+";
    case Outcome::mm:
        return "--";
    }
    return "?";
}

OutcomeDistribution OutcomeDistribution::from(const OutcomeProbabilities &probs,
                                              const AnalyzerSettings &settings) {
    OutcomeDistribution d;
    d.p = {probs.pp, probs.pm, probs.mp, probs.mm};
    d.p_inconclusive = probs.inconclusive;
    d.settings = settings;
    return d;
}

double OutcomeDistribution::conclusive() const {
    return p[0] + p[1] + p[2] + p[3];
}

std::array<double, 4> OutcomeDistribution::renormalized() const {
    const double total = conclusive();
    if (!(total > 0.0)) {
        throw std::domain_error("outcome distribution has no conclusive mass");
    }
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = p[i] / total;
    }
    return out;
}

void OutcomeDistribution::validate() const {
    for (const double v : p) {
        if (v < -1e-12) {
            throw InvariantError("negative outcome probability " +
                                 std::to_string(v));
        }
    }
    if (p_inconclusive < -1e-12) {
        throw InvariantError("negative inconclusive probability");
    }
    if (const double total = conclusive() + p_inconclusive;
        std::abs(total - 1.0) > 1e-10) {
        throw InvariantError("outcome probabilities sum to " +
                             std::to_string(total));
    }
}

double correlation(const OutcomeDistribution &dist) {
    const auto q = dist.renormalized();
    return q[0] + q[3] - q[1] - q[2];
}

DistributionSource local_engine(ExperimentConfig base, EvolutionMethod method) {
    return [base, method](const AnalyzerSettings &s) {
        ExperimentConfig config = base;
        config.analyzers = s;
        return OutcomeDistribution::from(run(config, method).outcome_probs, s);
    };
}

DistributionSource nonlocal_engine(ExperimentConfig base, double mu) {
    return [base, mu](const AnalyzerSettings &s) {
        ExperimentConfig config = base;
        config.analyzers = s;
        return OutcomeDistribution::from(run_nonlocal(config, mu).outcome_probs,
                                         s);
    };
}

ChshResult chsh(const ChshAngles &angles, const DistributionSource &engine) {
    const auto e = [&](double alpha, double beta) {
        return correlation(engine({alpha, beta}));
    };
    ChshResult r;
    r.correlations = {e(angles.a, angles.b), e(angles.a, angles.b_prime),
                      e(angles.a_prime, angles.b),
                      e(angles.a_prime, angles.b_prime)};
    r.s = r.correlations[0] - r.correlations[1] + r.correlations[2] +
          r.correlations[3];
    return r;
}

std::vector<double> angle_grid(std::size_t resolution) {
    std::vector<double> grid(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        grid[k] = std::numbers::pi * static_cast<double>(k) /
                  static_cast<double>(resolution);
    }
    return grid;
}

double NoSignalingReport::max_deviation() const {
    return std::max({max_marginal_deviation_a, max_marginal_deviation_b,
                     max_remote_dependence_a, max_remote_dependence_b});
}

NoSignalingReport no_signaling_audit(const DistributionSource &engine,
                                     const std::vector<double> &grid,
                                     double tolerance) {
    const std::size_t n = grid.size();
    // marginal_a[i][j] = P_A(+ | grid[i], grid[j]), likewise for B.
    std::vector<std::vector<double>> marginal_a(n, std::vector<double>(n));
    std::vector<std::vector<double>> marginal_b(n, std::vector<double>(n));
    NoSignalingReport report;
    report.tolerance = tolerance;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto q = engine({grid[i], grid[j]}).renormalized();
            marginal_a[i][j] = q[0] + q[1];
            marginal_b[i][j] = q[0] + q[2];
            report.max_marginal_deviation_a =
                std::max(report.max_marginal_deviation_a,
                         std::abs(marginal_a[i][j] - 0.5));
            report.max_marginal_deviation_b =
                std::max(report.max_marginal_deviation_b,
                         std::abs(marginal_b[i][j] - 0.5));
            ++report.points;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto [lo_a, hi_a] =
            std::minmax_element(marginal_a[i].begin(), marginal_a[i].end());
        report.max_remote_dependence_a =
            std::max(report.max_remote_dependence_a, *hi_a - *lo_a);
        // P_B(+) at fixed beta = grid[i], varying alpha.
        double lo_b = 1.0;
        double hi_b = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            lo_b = std::min(lo_b, marginal_b[k][i]);
            hi_b = std::max(hi_b, marginal_b[k][i]);
        }
        if (n > 0) {
            report.max_remote_dependence_b =
                std::max(report.max_remote_dependence_b, hi_b - lo_b);
        }
    }
    report.passed = report.max_deviation() <= tolerance;
    return report;
}

std::array<std::size_t, 4> OutcomeSequence::counts() const {
    std::array<std::size_t, 4> c{};
    for (const Outcome o : outcomes) {
        ++c[static_cast<std::size_t>(o)];
    }
    return c;
}

OutcomeSequence sample(const OutcomeDistribution &dist, std::size_t n,
                       std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("sample: n must be at least 1");
    }
    const auto q = dist.renormalized();
    std::array<double, 4> cumulative{};
    double acc = 0.0;
    std::size_t last_live = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        acc += std::max(q[i], 0.0);
        cumulative[i] = acc;
        if (q[i] > 0.0) {
            last_live = i;
        }
    }

    std::mt19937_64 rng(seed);
    OutcomeSequence seq;
    seq.settings = dist.settings;
    seq.seed = seed;
    seq.outcomes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::size_t pick = last_live; // rounding in the cumulative sum
        for (std::size_t i = 0; i < 4; ++i) {
            if (u < cumulative[i]) {
                pick = i;
                break;
            }
        }
        seq.outcomes.push_back(static_cast<Outcome>(pick));
    }
    return seq;
}

constexpr double kZeroCellTol = 1e-12;

ChiSquare chi_square_self_test(const OutcomeSequence &seq,
                               const OutcomeDistribution &dist) {
    const std::size_t n = seq.outcomes.size();
    if (n < 1000) {
        throw std::invalid_argument(
            "chi_square_self_test: needs at least 1000 outcomes, got " +
            std::to_string(n));
    }
    const auto q = dist.renormalized();
    const auto counts = seq.counts();
    ChiSquare result;
    std::size_t live = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        // Cells that are zero up to rounding carry no degree of freedom; a
        // hit in one means the sample cannot come from this distribution.
        if (q[i] <= kZeroCellTol) {
            if (counts[i] > 0) {
                result.statistic = std::numeric_limits<double>::infinity();
            }
            continue;
        }
        const double expected = q[i] * static_cast<double>(n);
        if (expected < 5.0) {
            throw std::invalid_argument(
                "chi_square_self_test: expected count for " +
                to_string(static_cast<Outcome>(i)) + " is below 5");
        }
        const double diff = static_cast<double>(counts[i]) - expected;
        result.statistic += diff * diff / expected;
        ++live;
    }
    result.dof = live > 0 ? live - 1 : 0;
    return result;
}

double chi_square_critical_99(std::size_t dof) {
    switch (dof) {
    case 1:
        return 6.634896601021214;
    case 2:
        return 9.210340371976184;
    case 3:
        return 11.344866730144373;
    default:
        throw std::invalid_argument("chi_square_critical_99: dof must be 1-3");
    }
}

} // namespace bellsim
