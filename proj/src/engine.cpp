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
#include "bellsim/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "bellsim/errors.hpp"

namespace bellsim {

namespace {

constexpr double kIntegerTol = 1e-9;
// Norm tolerance for states accepted as physical inputs.
constexpr double kPhysicalNormTol = 1e-10;

void require_normalized(const StateVector &psi, const char *what) {
    if (const double n = psi.norm(); std::abs(n - 1.0) > kPhysicalNormTol) {
        throw std::invalid_argument(std::string(what) +
                                    ": initial state has norm " +
                                    std::to_string(n));
    }
}

void require_dim(const ExperimentConfig &config, Eigen::Index dim,
                 const char *what) {
    if (static_cast<std::size_t>(dim) > config.max_dim) {
        throw ConfigError(std::string(what) + ": total dimension " +
                          std::to_string(dim) + " exceeds the maximum of " +
                          std::to_string(config.max_dim) +
                          "; use the branch method");
    }
}

double angle_of(Station station, const AnalyzerSettings &s) {
    return station == Station::A ? s.alpha : s.beta;
}

} // namespace

std::string to_string(EvolutionMethod method) {
    switch (method) {
    case EvolutionMethod::exact:
        return "exact";
    case EvolutionMethod::factorized:
        return "factorized";
    case EvolutionMethod::branch:
        return "branch";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    if (pointer_sites < 3) {
        throw ConfigError("pointer lattice needs at least 3 sites");
    }
    if (!std::isfinite(analyzers.alpha) || !std::isfinite(analyzers.beta)) {
        throw ConfigError("analyzer angles must be finite");
    }
    if (!std::isfinite(interaction_time) || interaction_time < 0.0) {
        throw ConfigError("interaction time must be finite and >= 0");
    }
    if (!std::isfinite(coupling) || coupling < 0.0) {
        throw ConfigError("coupling must be finite and >= 0");
    }
    if (!(tolerance > 0.0)) {
        throw ConfigError("tolerance must be positive");
    }
    const double eps = epsilon();
    if (!(eps < static_cast<double>(pointer_sites) / 2.0)) {
        throw ConfigError("epsilon = " + std::to_string(eps) +
                          " must be smaller than half the lattice (" +
                          std::to_string(pointer_sites) + " sites)");
    }
    if (pointer_mode.is_delta() &&
        std::abs(eps - std::round(eps)) > kIntegerTol) {
        throw ConfigError("delta pointer mode needs an integer epsilon, got " +
                          std::to_string(eps));
    }
    if (!pointer_mode.is_delta() && !(pointer_mode.sigma > 0.0)) {
        throw ConfigError("gaussian pointer width must be positive");
    }
}

SubsystemLayout ExperimentConfig::layout() const {
    return SubsystemLayout::canonical(pointer_sites);
}

PointerSpace ExperimentConfig::pointer_space() const {
    const double eps = epsilon();
    return PointerSpace(pointer_sites, pointer_mode, eps > 0.0 ? eps : 1.0,
                        leak_tolerance);
}

OutcomeProbabilities closed_form_probabilities(const AnalyzerSettings &s) {
    const double c = std::cos(s.alpha - s.beta);
    const double sn = std::sin(s.alpha - s.beta);
    OutcomeProbabilities p;
    p.pp = p.mm = 0.5 * c * c;
    p.pm = p.mp = 0.5 * sn * sn;
    return p;
}

double max_abs_difference(const OutcomeProbabilities &a,
                          const OutcomeProbabilities &b) {
    return std::max({std::abs(a.pp - b.pp), std::abs(a.pm - b.pm),
                     std::abs(a.mp - b.mp), std::abs(a.mm - b.mm),
                     std::abs(a.inconclusive - b.inconclusive)});
}

ComplexMatrix local_hamiltonian(Station station, const ExperimentConfig &config,
                                const SubsystemLayout &layout) {
    if (!(layout == config.layout())) {
        throw std::invalid_argument("local_hamiltonian: layout is not the "
                                    "canonical layout of the configuration");
    }
    const bool a = station == Station::A;
    const auto obs = observable(angle_of(station, config.analyzers));
    return config.coupling *
           embed(layout,
                 {{a ? kPhotonA : kPhotonB, obs.matrix},
                  {a ? kPointerA : kPointerB,
                   momentum_operator(config.pointer_sites)}},
                 config.max_dim);
}

ComplexMatrix nonlocal_hamiltonian(const ExperimentConfig &config, double mu,
                                   const SubsystemLayout &layout) {
    const auto obs = observable(config.analyzers.beta).matrix;
    const ComplexMatrix cross =
        embed(layout,
              {{kPhotonA, obs},
               {kPointerB, momentum_operator(config.pointer_sites)}},
              config.max_dim);
    return local_hamiltonian(Station::B, config, layout) + mu * cross;
}

StateVector initial_state(const ExperimentConfig &config) {
    config.validate();
    const auto space = config.pointer_space();
    const StateVector pointer = initial_state(space);
    return product_state(config.layout(),
                         {{{kPhotonA, kPhotonB}, bell_phi_plus()},
                          {{kPointerA}, pointer},
                          {{kPointerB}, pointer}});
}

StateVector evolve_exact(const ExperimentConfig &config,
                         const ComplexMatrix &h_total,
                         const StateVector &initial) {
    require_dim(config, h_total.rows(), "evolve_exact");
    require_normalized(initial, "evolve_exact");
    return expm_hermitian_apply(h_total, config.interaction_time, initial,
                                config.max_dim);
}

StateVector evolve_factorized(const ExperimentConfig &config,
                              const ComplexMatrix &h_a,
                              const ComplexMatrix &h_b,
                              const StateVector &initial) {
    require_dim(config, h_a.rows(), "evolve_factorized");
    require_normalized(initial, "evolve_factorized");
    const double t = config.interaction_time;
    const StateVector after_b =
        expm_hermitian_apply(h_b, t, initial, config.max_dim);
    return expm_hermitian_apply(h_a, t, after_b, config.max_dim);
}

StateVector evolve_factorized_reversed(const ExperimentConfig &config,
                                       const ComplexMatrix &h_a,
                                       const ComplexMatrix &h_b,
                                       const StateVector &initial) {
    return evolve_factorized(config, h_b, h_a, initial);
}

StateVector evolve_branch(const ExperimentConfig &config,
                          const StateVector &initial) {
    config.validate();
    const auto layout = config.layout();
    if (static_cast<std::size_t>(initial.size()) != layout.total_dim()) {
        throw std::invalid_argument("evolve_branch: state dimension mismatch");
    }
    require_normalized(initial, "evolve_branch");

    const auto n = static_cast<Eigen::Index>(config.pointer_sites);
    const auto space = config.pointer_space();
    const double eps = config.epsilon();
    // Eigenvalue +1 shifts the pointer by +eps, eigenvalue -1 by -eps.
    const std::array<ComplexMatrix, 2> shift{translation(space, eps),
                                             translation(space, -eps)};
    const auto basis_a = analyzer_basis(config.analyzers.alpha);
    const auto basis_b = analyzer_basis(config.analyzers.beta);
    const std::array<Eigen::Vector2cd, 2> eig_a{basis_a.plus, basis_a.minus};
    const std::array<Eigen::Vector2cd, 2> eig_b{basis_b.plus, basis_b.minus};

    // Block (pa, pb) of the state, viewed as an N x N matrix indexed by
    // (pointerA site, pointerB site).
    using Block = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                Eigen::RowMajor>;
    const auto block = [&](const StateVector &v, int pa, int pb) {
        return Eigen::Map<const Block>(v.data() + (pa * 2 + pb) * n * n, n, n);
    };

    StateVector out = StateVector::Zero(initial.size());
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            // Pointer amplitude conditioned on the photon branch |a>|b>.
            Block branch = Block::Zero(n, n);
            for (int pa = 0; pa < 2; ++pa) {
                for (int pb = 0; pb < 2; ++pb) {
                    branch += std::conj(eig_a[a](pa)) *
                              std::conj(eig_b[b](pb)) * block(initial, pa, pb);
                }
            }
            const Block moved = shift[a] * branch * shift[b].transpose();
            for (int pa = 0; pa < 2; ++pa) {
                for (int pb = 0; pb < 2; ++pb) {
                    Eigen::Map<Block>(out.data() + (pa * 2 + pb) * n * n, n,
                                      n) += eig_a[a](pa) * eig_b[b](pb) * moved;
                }
            }
        }
    }
    return out;
}

DensityMatrix reduced_pointer_density(const StateVector &final_state,
                                      const SubsystemLayout &layout) {
    return partial_trace_pure(final_state, layout, {kPointerA, kPointerB});
}

OutcomeProbabilities outcome_probabilities(const PointerSpace &space,
                                           const DensityMatrix &pointer_density) {
    const std::size_t n = space.n_sites();
    if (pointer_density.dim() != n * n) {
        throw std::invalid_argument(
            "outcome_probabilities: pointer density has dimension " +
            std::to_string(pointer_density.dim()) + ", expected " +
            std::to_string(n * n));
    }
    OutcomeProbabilities p;
    for (std::size_t xa = 0; xa < n; ++xa) {
        for (std::size_t xb = 0; xb < n; ++xb) {
            const std::size_t i = xa * n + xb;
            const double w = pointer_density(i, i).real();
            const PointerBin ba = space.bin(xa);
            const PointerBin bb = space.bin(xb);
            if (ba == PointerBin::neutral || bb == PointerBin::neutral) {
                p.inconclusive += w;
            } else if (ba == PointerBin::plus) {
                (bb == PointerBin::plus ? p.pp : p.pm) += w;
            } else {
                (bb == PointerBin::plus ? p.mp : p.mm) += w;
            }
        }
    }
    return p;
}

EvolutionResult make_result(const ExperimentConfig &config,
                            StateVector final_state, EvolutionMethod method) {
    if (const double norm = final_state.norm();
        std::abs(norm - 1.0) > config.tolerance) {
        throw InvariantError(to_string(method) +
                             " evolution lost normalization: norm " +
                             std::to_string(norm));
    }
    auto density = reduced_pointer_density(final_state, config.layout());
    auto probs = outcome_probabilities(config.pointer_space(), density);
    if (std::abs(probs.total() - 1.0) > config.tolerance) {
        throw InvariantError("outcome probabilities sum to " +
                             std::to_string(probs.total()));
    }
    return {std::move(final_state), method, std::move(density), probs};
}

EvolutionResult run(const ExperimentConfig &config, EvolutionMethod method) {
    config.validate();
    const StateVector psi0 = initial_state(config);
    if (method == EvolutionMethod::branch) {
        return make_result(config, evolve_branch(config, psi0), method);
    }
    const auto layout = config.layout();
    const ComplexMatrix h_a = local_hamiltonian(Station::A, config, layout);
    const ComplexMatrix h_b = local_hamiltonian(Station::B, config, layout);
    StateVector final_state = method == EvolutionMethod::exact
                                  ? evolve_exact(config, h_a + h_b, psi0)
                                  : evolve_factorized(config, h_a, h_b, psi0);
    return make_result(config, std::move(final_state), method);
}

EvolutionResult run_nonlocal(const ExperimentConfig &config, double mu) {
    config.validate();
    const auto layout = config.layout();
    const ComplexMatrix h =
        local_hamiltonian(Station::A, config, layout) +
        nonlocal_hamiltonian(config, mu, layout);
    return make_result(config, evolve_exact(config, h, initial_state(config)),
                       EvolutionMethod::exact);
}

double factorization_gap(const ExperimentConfig &config,
                         const ComplexMatrix &h_a, const ComplexMatrix &h_b) {
    require_dim(config, h_a.rows(), "factorization_gap");
    const double t = config.interaction_time;
    const ComplexMatrix joint = expm_hermitian(h_a + h_b, t, config.max_dim);
    const ComplexMatrix split = expm_hermitian(h_a, t, config.max_dim) *
                                expm_hermitian(h_b, t, config.max_dim);
    return (joint - split).norm();
}

OrderSwapGap order_swap_gap(const ExperimentConfig &config,
                            const ComplexMatrix &h_a, const ComplexMatrix &h_b,
                            const StateVector &initial) {
    StateVector ab = evolve_factorized(config, h_a, h_b, initial);
    StateVector ba = evolve_factorized_reversed(config, h_a, h_b, initial);
    OrderSwapGap gap;
    gap.state_gap = (ab - ba).norm();
    const auto r_ab = make_result(config, std::move(ab),
                                  EvolutionMethod::factorized);
    const auto r_ba = make_result(config, std::move(ba),
                                  EvolutionMethod::factorized);
    gap.probability_gap = max_abs_difference(r_ab.outcome_probs,
                                             r_ba.outcome_probs);
    return gap;
}

DisplacedPointers displaced_pointers(const ExperimentConfig &config) {
    config.validate();
    const auto space = config.pointer_space();
    const StateVector psi0 = initial_state(space);
    return {translation(space, config.epsilon()) * psi0,
            translation(space, -config.epsilon()) * psi0};
}

double displaced_overlap(const ExperimentConfig &config) {
    const auto d = displaced_pointers(config);
    return std::abs(d.plus.dot(d.minus));
}

ComplexMatrix branch_basis_matrix(const ExperimentConfig &config,
                                  const DensityMatrix &pointer_density) {
    const auto d = displaced_pointers(config);
    const std::array<const StateVector *, 2> side{&d.plus, &d.minus};
    const auto dim = static_cast<Eigen::Index>(pointer_density.dim());
    ComplexMatrix basis(dim, 4);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            basis.col(a * 2 + b) = kron(*side[a], *side[b], pointer_density.dim());
        }
    }
    return basis.adjoint() * pointer_density.matrix() * basis;
}

} // namespace bellsim
