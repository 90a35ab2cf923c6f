# Copyright 2026 The bellsim Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python bindings for the bellsim measurement simulator.

Angles are in radians throughout.
"""

from bellsim._bellsim import (
    ConfigError,
    EvolutionMethod,
    EvolutionResult,
    ExperimentConfig,
    InvariantError,
    PointerMode,
    chi_square_critical_99,
    chsh,
    closed_form_probabilities,
    commutator_norm,
    displaced_overlap,
    evolve_branch,
    evolve_exact,
    evolve_factorized,
    expm_hermitian,
    factorization_gap,
    hamiltonians,
    initial_state,
    kron,
    max_off_diagonal,
    no_signaling_max_deviation,
    order_swap_gap,
    partial_trace,
    run,
    run_nonlocal,
    sample,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
