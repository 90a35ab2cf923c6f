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
 * Von Neumann measurement of a polarization-entangled photon pair by two
 * pointer apparatuses.
 *
 * Each station couples its analyzer observable to its own pointer momentum,
 * H_A = lambda * O(alpha) (x) P_A and H_B = lambda * O(beta) (x) P_B, on the
 * canonical space photonA (x) photonB (x) pointerA (x) pointerB. The joint
 * state is evolved for time t with U = exp(-i t (H_A + H_B)); the prefactor
 * 2 pi / hbar is absorbed into the coupling, so only the pointer
 * displacement epsilon = t * lambda is observable.
 *
 * Three evolution routes are provided and are expected to agree for local
 * Hamiltonians:
 *  - exact:      diagonalize H_A + H_B and exponentiate on the full space;
 *  - factorized: exp(-i t H_A) * exp(-i t H_B), which is only equal to the
 *                exact evolution when [H_A, H_B] = 0;
 *  - branch:     expand the photons in the analyzer eigenbases and shift
 *                each pointer by +epsilon (eigenvalue +1) or -epsilon
 *                (eigenvalue -1). Never forms a full-space matrix.
 *
 * nonlocal_hamiltonian() builds a station-B coupling that also reads photon
 * A. Coupling photon A's observable O(alpha) to pointer B would still commute
 * with H_A, so the counterexample uses O(beta) on photon A instead; it fails
 * to commute with H_A whenever alpha - beta is not a multiple of pi/2.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>

#include "bellsim/layout.hpp"
#include "bellsim/photon.hpp"
#include "bellsim/pointer.hpp"
#include "bellsim/tensor.hpp"

namespace bellsim {

enum class Station { A, B };

enum class EvolutionMethod { exact, factorized, branch };

std::string to_string(EvolutionMethod method);

struct ExperimentConfig {
    AnalyzerSettings analyzers{0.0, std::numbers::pi / 8.0};
    std::size_t pointer_sites = 3;
    PointerMode pointer_mode = PointerMode::delta();
    double interaction_time = 1.0;
    double coupling = 1.0;
    /// Tolerance for the numerical invariants checked on every result.
    double tolerance = 1e-10;
    /// See PointerSpace::leak_tolerance().
    double leak_tolerance = 1e-6;
    std::uint64_t seed = 0;
    std::size_t max_dim = kDefaultMaxDim;

    [[nodiscard]] double epsilon() const {
        return interaction_time * coupling;
    }

    /// Throws ConfigError on an inconsistent configuration: fewer than 3
    /// sites, negative time or coupling, |epsilon| >= N/2, or a non-integer
    /// epsilon in delta mode.
    void validate() const;

    [[nodiscard]] SubsystemLayout layout() const;

    /// Readout bins are spaced by epsilon; a vanishing epsilon keeps the
    /// one-site spacing so the geometry stays well defined.
    [[nodiscard]] PointerSpace pointer_space() const;
};

/// Probabilities of the four conclusive outcomes plus the mass left in
/// neutral pointer positions at either station.
struct OutcomeProbabilities {
    double pp = 0.0;
    double pm = 0.0;
    double mp = 0.0;
    double mm = 0.0;
    double inconclusive = 0.0;

    [[nodiscard]] double conclusive() const { return pp + pm + mp + mm; }
    [[nodiscard]] double total() const { return conclusive() + inconclusive; }
};

/// 1/2 cos^2(alpha - beta) for ++ and --, 1/2 sin^2(alpha - beta) otherwise.
OutcomeProbabilities closed_form_probabilities(const AnalyzerSettings &s);

/// Largest absolute difference between matching entries (inconclusive
/// included).
double max_abs_difference(const OutcomeProbabilities &a,
                          const OutcomeProbabilities &b);

struct EvolutionResult {
    StateVector final_state;
    EvolutionMethod method = EvolutionMethod::exact;
    DensityMatrix pointer_density;
    OutcomeProbabilities outcome_probs;
};

/// lambda * O(angle) on the station's photon (x) P on its pointer.
ComplexMatrix local_hamiltonian(Station station, const ExperimentConfig &config,
                                const SubsystemLayout &layout);

/// Station-B coupling with an extra term reading photon A:
/// lambda * O(beta)_photonB (x) P_B + mu * O(beta)_photonA (x) P_B.
ComplexMatrix nonlocal_hamiltonian(const ExperimentConfig &config, double mu,
                                   const SubsystemLayout &layout);

/// Biphoton |phi+> with both pointers in their initial state.
StateVector initial_state(const ExperimentConfig &config);

/// exp(-i t h_total) |initial>. Throws ConfigError above config.max_dim.
StateVector evolve_exact(const ExperimentConfig &config,
                         const ComplexMatrix &h_total,
                         const StateVector &initial);

/// exp(-i t h_a) exp(-i t h_b) |initial>.
StateVector evolve_factorized(const ExperimentConfig &config,
                              const ComplexMatrix &h_a,
                              const ComplexMatrix &h_b,
                              const StateVector &initial);

/// Same product with the factors in the opposite order.
StateVector evolve_factorized_reversed(const ExperimentConfig &config,
                                       const ComplexMatrix &h_a,
                                       const ComplexMatrix &h_b,
                                       const StateVector &initial);

/// Eigenbranch evolution for the local Hamiltonians of `config`. Works for
/// any state on the canonical layout and at lattice sizes where the exact
/// route would exceed max_dim.
StateVector evolve_branch(const ExperimentConfig &config,
                          const StateVector &initial);

/// Trace out both photons.
DensityMatrix reduced_pointer_density(const StateVector &final_state,
                                      const SubsystemLayout &layout);

/// Joint bin occupancy of a pointerA (x) pointerB density matrix.
OutcomeProbabilities outcome_probabilities(const PointerSpace &space,
                                           const DensityMatrix &pointer_density);

/// Reduces `final_state`, reads out the pointers and checks the norm and
/// probability invariants against config.tolerance (InvariantError).
EvolutionResult make_result(const ExperimentConfig &config,
                            StateVector final_state, EvolutionMethod method);

/// Full pipeline with the local Hamiltonians of `config`.
EvolutionResult run(const ExperimentConfig &config,
                    EvolutionMethod method = EvolutionMethod::exact);

/// Full pipeline with the nonlocal station-B coupling, evolved exactly.
EvolutionResult run_nonlocal(const ExperimentConfig &config, double mu);

/// || exp(-i t (h_a + h_b)) - exp(-i t h_a) exp(-i t h_b) ||_F.
double factorization_gap(const ExperimentConfig &config,
                         const ComplexMatrix &h_a, const ComplexMatrix &h_b);

struct OrderSwapGap {
    /// || (U_A U_B - U_B U_A) |initial> ||.
    double state_gap = 0.0;
    /// Max outcome-probability difference between the two orders.
    double probability_gap = 0.0;
};

OrderSwapGap order_swap_gap(const ExperimentConfig &config,
                            const ComplexMatrix &h_a, const ComplexMatrix &h_b,
                            const StateVector &initial);

/// Pointer states after a +epsilon and -epsilon shift of the initial state.
struct DisplacedPointers {
    StateVector plus;
    StateVector minus;
};

DisplacedPointers displaced_pointers(const ExperimentConfig &config);

/// |<psi+|psi-|>, by direct inner product.
double displaced_overlap(const ExperimentConfig &config);

/// <b_i| rho |b_j> for the four product states b = psi(+-)_A (x) psi(+-)_B in
/// the order ++, +-, -+, --. In delta mode these are position basis states.
ComplexMatrix branch_basis_matrix(const ExperimentConfig &config,
                                  const DensityMatrix &pointer_density);

} // namespace bellsim
